//! δ-derivations of `V(f)`, the exact ½-derivation space, and the classified
//! families it is compared against.
//!
//! A homogeneous map `φ_γ(e_α) = d_γ(α) e_{α+γ}` is a ½-derivation iff for all
//! `α, β`
//!
//! ```text
//! 2(f(β) − f(α)) d_γ(α+β) = (f(β) − f(α+γ)) d_γ(α) + (f(β+γ) − f(α)) d_γ(β)
//! ```
//!
//! and an arbitrary map is one iff each of its homogeneous parts is. The
//! solvers turn these equations into exact linear systems.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{basis_bracket, bracket, GradedMap, LinearMap};
use crate::check::{CheckReport, Outcome, Tally};
use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::group::{GroupElement, Window};
use crate::linalg::{in_span, rank, rref};
use crate::wittfn::{CasePartition, CaseTag, WittFunction};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DeltaValue(pub Scalar);

impl DeltaValue {
    pub fn half() -> Self {
        Self(Scalar::ratio(1, 2))
    }
}

/// Checks `φ([e_α, e_β]) = δ([φ(e_α), e_β] + [e_α, φ(e_β)])` on window pairs.
pub fn is_delta_derivation(
    f: &WittFunction,
    phi: &LinearMap,
    delta: &DeltaValue,
    window: &Window,
) -> Result<CheckReport> {
    let spec = f.group();
    let domain = spec.window_elements(window);
    let mut tally = Tally::default();
    'outer: for a in &domain {
        for b in &domain {
            let ab = spec.add(a, b);
            let outcome = if !window.contains_padded(&ab) {
                Outcome::Skipped
            } else if !(phi.covers(a) && phi.covers(b) && phi.covers(&ab)) {
                Outcome::Unavailable
            } else {
                let lhs = phi.apply_basis(spec, &ab)?.scale(&basis_bracket(f, a, b)?);
                let ea = crate::algebra::AlgebraVector::basis(a.clone());
                let eb = crate::algebra::AlgebraVector::basis(b.clone());
                let rhs = bracket(f, &phi.apply_basis(spec, a)?, &eb)?
                    .add(&bracket(f, &ea, &phi.apply_basis(spec, b)?)?)
                    .scale(&delta.0);
                if lhs == rhs {
                    Outcome::Holds
                } else {
                    Outcome::Fails
                }
            };
            tally.record(outcome, || vec![a.clone(), b.clone()]);
            if tally.failed() {
                break 'outer;
            }
        }
    }
    Ok(tally.finish())
}

/// The three `(index, coefficient)` terms of the homogeneous condition at
/// `(γ, α, β)`, written as `Σ coefficient · d_γ(index) = 0`.
fn condition_terms(
    f: &WittFunction,
    gamma: &GroupElement,
    a: &GroupElement,
    b: &GroupElement,
) -> Result<[(GroupElement, Scalar); 3]> {
    let spec = f.group();
    let fa = f.evaluate(a)?;
    let fb = f.evaluate(b)?;
    let fag = f.evaluate(&spec.add(a, gamma))?;
    let fbg = f.evaluate(&spec.add(b, gamma))?;
    Ok([
        (spec.add(a, b), Scalar::from_int(2) * (&fb - &fa)),
        (a.clone(), -(&fb - &fag)),
        (b.clone(), -(&fbg - &fa)),
    ])
}

/// `2(f(β)−f(α))d_γ(α+β) − (f(β)−f(α+γ))d_γ(α) − (f(β+γ)−f(α))d_γ(β)`.
pub fn homogeneous_residual(f: &WittFunction, d: &GradedMap, a: &GroupElement, b: &GroupElement) -> Result<Scalar> {
    let mut acc = Scalar::zero();
    for (idx, c) in condition_terms(f, &d.degree, a, b)? {
        acc += &(&c * d.coeff(&idx)?);
    }
    Ok(acc)
}

/// A nullspace over unknowns `d_γ(α)`, indexed by `(γ, α)` pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolutionSpace {
    pub unknowns: Vec<(GroupElement, GroupElement)>,
    pub basis: Vec<Vec<Scalar>>,
    pub dim: usize,
}

impl SolutionSpace {
    /// Reassembles basis vector `k` as a map tabulated on the unknowns' indices.
    pub fn to_linear_map(&self, k: usize) -> LinearMap {
        let mut parts: BTreeMap<GroupElement, BTreeMap<GroupElement, Scalar>> = BTreeMap::new();
        for ((g, a), c) in self.unknowns.iter().zip(&self.basis[k]) {
            parts.entry(g.clone()).or_default().insert(a.clone(), c.clone());
        }
        LinearMap::new(parts.into_iter().map(|(g, coeffs)| GradedMap::new(g, coeffs)).collect())
            .expect("degrees are distinct map keys")
    }

    pub fn degrees(&self) -> Vec<GroupElement> {
        let mut d: Vec<GroupElement> = self.unknowns.iter().map(|(g, _)| g.clone()).collect();
        d.dedup();
        d
    }

    /// Coordinates of `phi` in this space's unknown index.
    pub fn project(&self, phi: &LinearMap) -> Result<Vec<Scalar>> {
        let degrees = self.degrees();
        if let Some(p) = phi
            .parts()
            .iter()
            .find(|p| !degrees.contains(&p.degree) && !p.is_zero())
        {
            return Err(Error::IndexMismatch(format!(
                "map has a part of degree {} outside the index",
                p.degree
            )));
        }
        self.unknowns
            .iter()
            .map(|(g, a)| match phi.part(g) {
                None => Ok(Scalar::zero()),
                Some(p) => p
                    .coeff(a)
                    .cloned()
                    .map_err(|_| Error::IndexMismatch(format!("map lacks d_{g}({a})"))),
            })
            .collect()
    }
}

fn nonabelian_case(f: &WittFunction) -> Result<CasePartition> {
    let part = f.classify()?;
    if part.case == CaseTag::Abelian {
        return Err(Error::AbelianCase);
    }
    Ok(part)
}

/// Solves for all ½-derivations of `V(f)` on a finite group: one unknown per
/// `(γ, α) ∈ Γ×Γ`, one equation per `(γ, α, β)`.
pub fn solve_halfder_space(f: &WittFunction) -> Result<SolutionSpace> {
    let elements = f.group().enumerate()?;
    nonabelian_case(f)?;
    let n = elements.len();
    let pos: HashMap<&GroupElement, usize> = elements.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let unknowns: Vec<_> = elements
        .iter()
        .flat_map(|g| elements.iter().map(move |a| (g.clone(), a.clone())))
        .collect();
    let mut rows = Vec::with_capacity(n * n * n);
    for (gi, g) in elements.iter().enumerate() {
        for a in &elements {
            for b in &elements {
                let mut row = vec![Scalar::zero(); n * n];
                for (idx, c) in condition_terms(f, g, a, b)? {
                    row[gi * n + pos[&idx]] += &c;
                }
                rows.push(row);
            }
        }
    }
    let basis = rref(rows, n * n).nullspace();
    Ok(SolutionSpace {
        dim: basis.len(),
        unknowns,
        basis,
    })
}

/// Per-degree result of the windowed solver.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeSolution {
    pub degree: GroupElement,
    pub space: SolutionSpace,
    pub equations: usize,
    /// Whether the window contains an `α` with `f(α) = f(γ)` and, for every
    /// such `α` with `f(α+γ) = 2f(γ)`, an auxiliary `β` with
    /// `f(β) ∉ {0, f(γ), 2f(γ)}` and `α+β` inside the window.
    pub witnessable: bool,
    pub notes: Vec<String>,
}

/// Solves the homogeneous condition degree by degree over pairs `(α, β)` with
/// `α`, `β`, `α+β` all inside the window.
pub fn solve_halfder_space_windowed(
    f: &WittFunction,
    degrees: &[GroupElement],
    window: &Window,
) -> Result<Vec<DegreeSolution>> {
    let spec = f.group();
    if spec.is_finite() {
        return Err(Error::FiniteGroup(spec.to_string()));
    }
    if window.radius == 0 {
        return Err(Error::EmptyWindow);
    }
    nonabelian_case(f)?;
    for g in degrees {
        spec.conforms(g)?;
    }
    let domain = spec.window_elements(window);
    degrees
        .par_iter()
        .map(|g| solve_degree(f, g, &domain, window))
        .collect()
}

fn solve_degree(
    f: &WittFunction,
    gamma: &GroupElement,
    domain: &[GroupElement],
    window: &Window,
) -> Result<DegreeSolution> {
    let spec = f.group();
    let n = domain.len();
    let pos: HashMap<&GroupElement, usize> = domain.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let mut rows = Vec::new();
    for a in domain {
        for b in domain {
            let ab = spec.add(a, b);
            if !window.contains(&ab) {
                continue;
            }
            let mut row = vec![Scalar::zero(); n];
            for (idx, c) in condition_terms(f, gamma, a, b)? {
                row[pos[&idx]] += &c;
            }
            rows.push(row);
        }
    }
    let equations = rows.len();
    let basis = rref(rows, n).nullspace();

    let fg = f.evaluate(gamma)?;
    let two_fg = Scalar::from_int(2) * &fg;
    let mut notes = Vec::new();
    let mut exceptional = 0;
    for a in domain {
        if f.evaluate(a)? != fg {
            continue;
        }
        exceptional += 1;
        if f.evaluate(&spec.add(a, gamma))? != two_fg {
            continue;
        }
        let mut found = false;
        for b in domain {
            let fb = f.evaluate(b)?;
            if !fb.is_zero() && fb != fg && fb != two_fg && window.contains(&spec.add(a, b)) {
                found = true;
                break;
            }
        }
        if !found {
            notes.push(format!("no auxiliary β in window for α = {a}"));
        }
    }
    if exceptional == 0 {
        notes.push(format!("window has no α with f(α) = f({gamma})"));
    }
    Ok(DegreeSolution {
        degree: gamma.clone(),
        space: SolutionSpace {
            unknowns: domain.iter().map(|a| (gamma.clone(), a.clone())).collect(),
            dim: basis.len(),
            basis,
        },
        equations,
        witnessable: notes.is_empty(),
        notes,
    })
}

/// The classified ½-derivation family materialised on a window: one map per
/// parameter index, tabulated on the padded window.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HalfDerFamily {
    pub case: CaseTag,
    pub parameter_index: Vec<GroupElement>,
    pub maps: Vec<LinearMap>,
}

/// The classified maps of degree `gamma`, tabulated on `domain`:
/// shift by `γ` when `γ ∈ Γ₀` or in case `Big`; in case `Two` with `γ ∉ Γ₀`, the
/// shift restricted to `Γ₀`-indexed basis vectors; nothing otherwise.
pub fn classified_maps_for_degree(
    case: &CasePartition,
    gamma: &GroupElement,
    domain: &[GroupElement],
) -> Result<Option<LinearMap>> {
    let shift = || LinearMap::homogeneous(GradedMap::constant(gamma.clone(), Scalar::one(), domain));
    match case.case {
        CaseTag::Abelian => Err(Error::AbelianCase),
        CaseTag::Big => Ok(Some(shift())),
        _ if case.in_gamma0(gamma) => Ok(Some(shift())),
        CaseTag::Three => Ok(None),
        CaseTag::Two => Ok(Some(LinearMap::homogeneous(GradedMap::from_fn(
            gamma.clone(),
            domain,
            |a| {
                if case.in_gamma0(a) {
                    Scalar::one()
                } else {
                    Scalar::zero()
                }
            },
        )))),
    }
}

pub fn classified_basis(case: &CasePartition, window: &Window) -> Result<HalfDerFamily> {
    let spec = case.group();
    let tabulated = spec.padded_elements(window);
    let mut parameter_index = Vec::new();
    let mut maps = Vec::new();
    for g in spec.window_elements(window) {
        if let Some(m) = classified_maps_for_degree(case, &g, &tabulated)? {
            parameter_index.push(g);
            maps.push(m);
        }
    }
    Ok(HalfDerFamily {
        case: case.case,
        parameter_index,
        maps,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    /// `"family"` when a classified map lies outside the solved span,
    /// `"solved"` when a solved vector lies outside the family span.
    pub source: &'static str,
    pub index: usize,
    pub vector: Vec<Scalar>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceReport {
    pub solved_dim: usize,
    pub family_size: usize,
    pub family_rank: usize,
    pub family_in_solved: bool,
    pub solved_in_family: bool,
    pub equivalent: bool,
    pub discrepancy: Option<Discrepancy>,
}

/// Mutual span containment between a solved space and a materialised family.
pub fn compare_spaces(solved: &SolutionSpace, family: &[LinearMap]) -> Result<EquivalenceReport> {
    let n = solved.unknowns.len();
    let fam: Vec<Vec<Scalar>> = family.iter().map(|m| solved.project(m)).collect::<Result<_>>()?;
    let family_rank = rank(&fam, n);
    let mut discrepancy = None;
    let missing_family = fam.iter().position(|v| !in_span(&solved.basis, v));
    if let Some(k) = missing_family {
        discrepancy = Some(Discrepancy {
            source: "family",
            index: k,
            vector: fam[k].clone(),
        });
    }
    let missing_solved = solved.basis.iter().position(|v| !in_span(&fam, v));
    if let (None, Some(k)) = (&discrepancy, missing_solved) {
        discrepancy = Some(Discrepancy {
            source: "solved",
            index: k,
            vector: solved.basis[k].clone(),
        });
    }
    let family_in_solved = missing_family.is_none();
    let solved_in_family = missing_solved.is_none();
    Ok(EquivalenceReport {
        solved_dim: solved.dim,
        family_size: family.len(),
        family_rank,
        family_in_solved,
        solved_in_family,
        equivalent: family_in_solved && solved_in_family && family_rank == family.len(),
        discrepancy,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WindowVerdict {
    ConsistentWithClassification,
    Discrepancy,
    Inconclusive,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeComparison {
    pub solution: DegreeSolution,
    pub equivalence: EquivalenceReport,
    pub verdict: WindowVerdict,
}

/// Windowed solve plus per-degree comparison with the classified family.
/// Never claims more than consistency: the classification quantifies over all
/// of `Γ`.
pub fn check_windowed_classification(
    f: &WittFunction,
    degrees: &[GroupElement],
    window: &Window,
) -> Result<(WindowVerdict, Vec<DegreeComparison>)> {
    let case = f.classify()?;
    let solutions = solve_halfder_space_windowed(f, degrees, window)?;
    let tabulated = f.group().padded_elements(window);
    let mut overall = WindowVerdict::ConsistentWithClassification;
    let mut out = Vec::new();
    for solution in solutions {
        let family: Vec<LinearMap> = classified_maps_for_degree(&case, &solution.degree, &tabulated)?
            .into_iter()
            .collect();
        let equivalence = compare_spaces(&solution.space, &family)?;
        let verdict = if !equivalence.family_in_solved {
            WindowVerdict::Discrepancy
        } else if !solution.witnessable {
            WindowVerdict::Inconclusive
        } else if equivalence.equivalent {
            WindowVerdict::ConsistentWithClassification
        } else {
            WindowVerdict::Discrepancy
        };
        overall = match (overall, verdict) {
            (WindowVerdict::Discrepancy, _) | (_, WindowVerdict::Discrepancy) => WindowVerdict::Discrepancy,
            (WindowVerdict::Inconclusive, _) | (_, WindowVerdict::Inconclusive) => WindowVerdict::Inconclusive,
            _ => WindowVerdict::ConsistentWithClassification,
        };
        out.push(DegreeComparison {
            solution,
            equivalence,
            verdict,
        });
    }
    Ok((overall, out))
}
