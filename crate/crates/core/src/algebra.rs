//! The Lie algebra `V(f)` with basis `{e_α}` and bracket
//! `[e_α, e_β] = (f(β) − f(α)) e_{α+β}`.
//!
//! Note the sign: for `Γ = Z` and `f = id` this gives `[e_i, e_j] = (j − i) e_{i+j}`,
//! which differs from the common Witt convention `(i − j) e_{i+j}` by the
//! isomorphism `e_i ↦ −e_i`.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::check::{CheckReport, Outcome, Tally};
use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::group::{GroupElement, GroupSpec, Window};
use crate::wittfn::WittFunction;

/// A finite linear combination of basis vectors. Zero coefficients are never
/// stored, so structural equality is value equality.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct AlgebraVector {
    terms: BTreeMap<GroupElement, Scalar>,
}

impl AlgebraVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(a: GroupElement) -> Self {
        Self::term(a, Scalar::one())
    }

    pub fn term(a: GroupElement, c: Scalar) -> Self {
        let mut v = Self::zero();
        v.add_term(a, &c);
        v
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (GroupElement, Scalar)>) -> Self {
        let mut v = Self::zero();
        for (a, c) in terms {
            v.add_term(a, &c);
        }
        v
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, a: &GroupElement) -> Scalar {
        self.terms.get(a).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&GroupElement, &Scalar)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &GroupElement> {
        self.terms.keys()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, a: GroupElement, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let cancelled = {
            let slot = self.terms.entry(a.clone()).or_default();
            *slot += c;
            slot.is_zero()
        };
        if cancelled {
            self.terms.remove(&a);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (a, c) in &other.terms {
            out.add_term(a.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|(a, x)| (a.clone(), x * c)).collect(),
        }
    }

    /// Keeps only the terms whose index satisfies `keep`.
    pub fn restrict(&self, mut keep: impl FnMut(&GroupElement) -> bool) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .filter(|(a, _)| keep(a))
                .map(|(a, c)| (a.clone(), c.clone()))
                .collect(),
        }
    }

    /// Multiplication by `e_γ` in the group algebra: every index shifts by `γ`.
    pub fn shift(&self, spec: &GroupSpec, gamma: &GroupElement) -> Self {
        Self {
            terms: self
                .terms
                .iter()
                .map(|(a, c)| (spec.add(a, gamma), c.clone()))
                .collect(),
        }
    }

    /// The group-algebra product `e_α · e_β = e_{α+β}`, extended bilinearly.
    pub fn group_mul(&self, spec: &GroupSpec, other: &Self) -> Self {
        let mut out = Self::zero();
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(spec.add(a, b), &(x * y));
            }
        }
        out
    }

    /// Parses `e<elem>:<scalar>` terms joined by commas; `0` or the empty
    /// string is the zero vector. Repeated indices are summed.
    pub fn parse(spec: &GroupSpec, literal: &str) -> Result<Self> {
        let bad = || Error::Parse {
            what: "vector",
            input: literal.to_string(),
        };
        if literal.is_empty() || literal == "0" {
            return Ok(Self::zero());
        }
        let body = literal.strip_prefix('e').ok_or_else(bad)?;
        let mut v = Self::zero();
        for term in body.split(",e") {
            let (elem, coeff) = term.split_once(':').ok_or_else(bad)?;
            let a = spec.parse_element(elem)?;
            let c: Scalar = coeff.parse()?;
            v.add_term(a, &c);
        }
        Ok(v)
    }
}

impl fmt::Display for AlgebraVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (a, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "e{a}:{c}")?;
        }
        Ok(())
    }
}

impl Serialize for AlgebraVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// `[e_α, e_β]` as a coefficient on `e_{α+β}`.
pub fn basis_bracket(f: &WittFunction, a: &GroupElement, b: &GroupElement) -> Result<Scalar> {
    Ok(&f.evaluate(b)? - &f.evaluate(a)?)
}

pub fn bracket(f: &WittFunction, x: &AlgebraVector, y: &AlgebraVector) -> Result<AlgebraVector> {
    let spec = f.group();
    let mut out = AlgebraVector::zero();
    for (a, xa) in x.terms() {
        for (b, yb) in y.terms() {
            let c = basis_bracket(f, a, b)?;
            if !c.is_zero() {
                out.add_term(spec.add(a, b), &(&c * &(xa * yb)));
            }
        }
    }
    Ok(out)
}

/// A homogeneous map `φ_γ(e_α) = d_γ(α) e_{α+γ}`, with `d_γ` tabulated on a
/// finite set of indices. Indices absent from the table are unknown, not zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GradedMap {
    pub degree: GroupElement,
    pub coeffs: BTreeMap<GroupElement, Scalar>,
}

impl GradedMap {
    pub fn new(degree: GroupElement, coeffs: BTreeMap<GroupElement, Scalar>) -> Self {
        Self { degree, coeffs }
    }

    pub fn from_fn<'a>(
        degree: GroupElement,
        domain: impl IntoIterator<Item = &'a GroupElement>,
        mut d: impl FnMut(&GroupElement) -> Scalar,
    ) -> Self {
        let coeffs = domain.into_iter().map(|a| (a.clone(), d(a))).collect();
        Self { degree, coeffs }
    }

    /// `d_γ ≡ value` on `domain`.
    pub fn constant<'a>(
        degree: GroupElement,
        value: Scalar,
        domain: impl IntoIterator<Item = &'a GroupElement>,
    ) -> Self {
        Self::from_fn(degree, domain, |_| value.clone())
    }

    pub fn coeff(&self, a: &GroupElement) -> Result<&Scalar> {
        self.coeffs.get(a).ok_or_else(|| Error::DomainMiss {
            degree: self.degree.clone(),
            at: a.clone(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.values().all(Scalar::is_zero)
    }
}

/// `φ = Σ_γ φ_γ` with pairwise distinct degrees.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct LinearMap {
    parts: Vec<GradedMap>,
}

impl LinearMap {
    pub fn new(parts: Vec<GradedMap>) -> Result<Self> {
        let mut parts = parts;
        parts.sort_by(|a, b| a.degree.cmp(&b.degree));
        if let Some(w) = parts.windows(2).find(|w| w[0].degree == w[1].degree) {
            return Err(Error::IndexMismatch(format!("degree {} appears twice", w[0].degree)));
        }
        Ok(Self { parts })
    }

    pub fn homogeneous(part: GradedMap) -> Self {
        Self { parts: vec![part] }
    }

    pub fn zero() -> Self {
        Self::default()
    }

    /// `a·id` tabulated on `domain`.
    pub fn scalar<'a>(spec: &GroupSpec, a: Scalar, domain: impl IntoIterator<Item = &'a GroupElement>) -> Self {
        Self::homogeneous(GradedMap::constant(spec.zero(), a, domain))
    }

    pub fn parts(&self) -> &[GradedMap] {
        &self.parts
    }

    pub fn part(&self, degree: &GroupElement) -> Option<&GradedMap> {
        self.parts.iter().find(|p| &p.degree == degree)
    }

    pub fn apply_basis(&self, spec: &GroupSpec, a: &GroupElement) -> Result<AlgebraVector> {
        let mut out = AlgebraVector::zero();
        for p in &self.parts {
            out.add_term(spec.add(a, &p.degree), p.coeff(a)?);
        }
        Ok(out)
    }

    /// Whether every part has a coefficient at `a`.
    pub fn covers(&self, a: &GroupElement) -> bool {
        self.parts.iter().all(|p| p.coeffs.contains_key(a))
    }

    /// `Some(a)` when the map is `a·id` on its tabulated domain.
    pub fn scalar_value(&self, spec: &GroupSpec) -> Option<Scalar> {
        let mut value = Scalar::zero();
        for p in &self.parts {
            if p.degree == spec.zero() {
                let mut vals = p.coeffs.values();
                let first = vals.next().cloned().unwrap_or_default();
                if vals.any(|v| *v != first) {
                    return None;
                }
                value = first;
            } else if !p.is_zero() {
                return None;
            }
        }
        Some(value)
    }
}

pub fn apply_map(spec: &GroupSpec, phi: &LinearMap, x: &AlgebraVector) -> Result<AlgebraVector> {
    let mut out = AlgebraVector::zero();
    for (a, c) in x.terms() {
        out = out.add(&phi.apply_basis(spec, a)?.scale(c));
    }
    Ok(out)
}

/// The Jacobi sum on a basis triple, as a coefficient on `e_{α+β+γ}`.
pub fn jacobi_sum(f: &WittFunction, a: &GroupElement, b: &GroupElement, c: &GroupElement) -> Result<Scalar> {
    let spec = f.group();
    let term = |x: &GroupElement, y: &GroupElement, z: &GroupElement| -> Result<Scalar> {
        Ok(&basis_bracket(f, x, y)? * &basis_bracket(f, &spec.add(x, y), z)?)
    };
    Ok(&(&term(a, b, c)? + &term(b, c, a)?) + &term(c, a, b)?)
}

/// Checks the Jacobi identity on every basis triple of the window whose
/// pairwise and total sums stay inside the padded window. Does not require
/// `f` to be valid.
pub fn verify_jacobi(f: &WittFunction, window: &Window) -> Result<CheckReport> {
    let spec = f.group();
    let domain = spec.window_elements(window);
    let mut tally = Tally::default();
    'outer: for a in &domain {
        for b in &domain {
            for c in &domain {
                let ab = spec.add(a, b);
                let derived = [ab.clone(), spec.add(b, c), spec.add(c, a), spec.add(&ab, c)];
                let outcome = if !derived.iter().all(|d| window.contains_padded(d)) {
                    Outcome::Skipped
                } else if jacobi_sum(f, a, b, c)?.is_zero() {
                    Outcome::Holds
                } else {
                    Outcome::Fails
                };
                tally.record(outcome, || vec![a.clone(), b.clone(), c.clone()]);
                if tally.failed() {
                    break 'outer;
                }
            }
        }
    }
    Ok(tally.finish())
}
