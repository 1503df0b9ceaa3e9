//! The function `f: Γ → ℚ(i)` defining `V(f)`, its Lie condition and the
//! case split on the size of its image.

use std::collections::{BTreeMap, HashSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactnum::Scalar;
use crate::group::{GroupElement, GroupSpec, SubgroupTable};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WittKind {
    /// Explicit values on a finite group.
    Table(BTreeMap<GroupElement, Scalar>),
    /// A homomorphism determined by its values on the free generators;
    /// torsion generators map to zero.
    Additive(Vec<Scalar>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WittFunction {
    group: GroupSpec,
    kind: WittKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    /// A pair `(α, β)` violating the Lie condition.
    pub witness: Option<(GroupElement, GroupElement)>,
    pub hint: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum CaseTag {
    /// `|f(Γ)| = 1`
    Abelian,
    /// `|f(Γ)| = 2`
    Two,
    /// `|f(Γ)| = 3`
    Three,
    /// `|f(Γ)| ≥ 4`
    Big,
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CasePartition {
    pub case: CaseTag,
    /// The nonzero value in case `Two`, or the value with `τ = 1` in case `Three`.
    pub c: Option<Scalar>,
    /// `Γ₀ = f⁻¹(0)`.
    pub gamma0: SubgroupTable,
    /// Surjection onto `Z/3` in case `Three`; `f(α) = ±c ⟺ τ(α) = ±1`.
    pub tau: Option<BTreeMap<GroupElement, u8>>,
    /// Lexicographically least element of each `τ`-fibre, indexed by `τ`.
    pub coset_reps: Option<[GroupElement; 3]>,
}

impl CasePartition {
    pub fn group(&self) -> &GroupSpec {
        self.gamma0.parent()
    }

    pub fn in_gamma0(&self, a: &GroupElement) -> bool {
        self.gamma0.contains(a)
    }

    /// `τ(α)`, case `Three` only.
    pub fn coset_index(&self, a: &GroupElement) -> Option<u8> {
        self.tau.as_ref().and_then(|t| t.get(a).copied())
    }
}

impl WittFunction {
    pub fn from_table(group: GroupSpec, table: BTreeMap<GroupElement, Scalar>) -> Result<Self> {
        if !group.is_finite() {
            return Err(Error::InfiniteGroup(group.to_string()));
        }
        for a in table.keys() {
            group.conforms(a)?;
        }
        Ok(Self {
            group,
            kind: WittKind::Table(table),
        })
    }

    /// Table from values listed in enumeration order of the group.
    pub fn from_values(group: GroupSpec, values: &[Scalar]) -> Result<Self> {
        let elements = group.enumerate()?;
        if elements.len() != values.len() {
            return Err(Error::InvalidFunction(format!(
                "{} values given for a group of order {}",
                values.len(),
                elements.len()
            )));
        }
        Self::from_table(group, elements.into_iter().zip(values.iter().cloned()).collect())
    }

    pub fn additive(group: GroupSpec, gen_values: Vec<Scalar>) -> Result<Self> {
        let f = Self {
            group,
            kind: WittKind::Additive(gen_values),
        };
        f.check_additive_shape()?;
        Ok(f)
    }

    fn check_additive_shape(&self) -> Result<()> {
        match &self.kind {
            WittKind::Additive(g) if g.len() != self.group.rank => Err(Error::InvalidFunction(format!(
                "{} generator values for a group of rank {}",
                g.len(),
                self.group.rank
            ))),
            _ => Ok(()),
        }
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    pub fn kind(&self) -> &WittKind {
        &self.kind
    }

    pub fn evaluate(&self, a: &GroupElement) -> Result<Scalar> {
        match &self.kind {
            WittKind::Table(t) => t.get(a).cloned().ok_or_else(|| Error::MissingValue(a.clone())),
            WittKind::Additive(g) => {
                self.group.conforms(a)?;
                Ok(g.iter().zip(a.free()).map(|(c, &x)| c * &Scalar::from_int(x)).sum())
            }
        }
    }

    /// `(f(α+β) − f(α) − f(β))·(f(α) − f(β))`, zero iff the Lie condition
    /// holds at `(α, β)`.
    pub fn lie_defect(&self, a: &GroupElement, b: &GroupElement) -> Result<Scalar> {
        let fa = self.evaluate(a)?;
        let fb = self.evaluate(b)?;
        let fab = self.evaluate(&self.group.add(a, b))?;
        Ok((&(&fab - &fa) - &fb) * &(&fa - &fb))
    }

    pub fn validate(&self) -> Result<ValidationReport> {
        self.check_additive_shape()?;
        let WittKind::Table(table) = &self.kind else {
            // additive maps fix 0 and satisfy f(α+β) = f(α) + f(β) identically
            return Ok(ValidationReport {
                valid: true,
                witness: None,
                hint: None,
            });
        };
        let elements = self.group.enumerate()?;
        if let Some(missing) = elements.iter().find(|a| !table.contains_key(a)) {
            return Err(Error::MissingValue(missing.clone()));
        }
        let f0 = &table[&self.group.zero()];
        if !f0.is_zero() {
            return Ok(ValidationReport {
                valid: false,
                witness: None,
                hint: Some(format!(
                    "f(0) = {f0}; replace f by f - f(0), which leaves the bracket unchanged"
                )),
            });
        }
        for a in &elements {
            for b in &elements {
                if !self.lie_defect(a, b)?.is_zero() {
                    return Ok(ValidationReport {
                        valid: false,
                        witness: Some((a.clone(), b.clone())),
                        hint: None,
                    });
                }
            }
        }
        Ok(ValidationReport {
            valid: true,
            witness: None,
            hint: None,
        })
    }

    fn require_valid(&self) -> Result<()> {
        let report = self.validate()?;
        if report.valid {
            return Ok(());
        }
        Err(Error::InvalidFunction(match (report.witness, report.hint) {
            (Some((a, b)), _) => format!("Lie condition fails at ({a}, {b})"),
            (None, Some(h)) => h,
            (None, None) => "rejected".into(),
        }))
    }

    /// `Γ₀ = f⁻¹(0)`. On finite groups the subgroup is materialised and both
    /// closure and constancy of `f` on `Γ₀`-cosets are checked exhaustively.
    pub fn kernel(&self) -> Result<SubgroupTable> {
        self.require_valid()?;
        match &self.kind {
            WittKind::Additive(g) if !self.group.is_finite() => {
                Ok(SubgroupTable::kernel_of_form(&self.group, g.clone()))
            }
            _ => {
                let elements = self.group.enumerate()?;
                let mut zeros = Vec::new();
                for a in &elements {
                    if self.evaluate(a)?.is_zero() {
                        zeros.push(a.clone());
                    }
                }
                let table = SubgroupTable::from_elements(&self.group, zeros)
                    .map_err(|e| Error::Internal(format!("kernel of a valid f: {e}")))?;
                for a in &elements {
                    for b in &elements {
                        if table.contains(&self.group.sub(a, b)) && self.evaluate(a)? != self.evaluate(b)? {
                            return Err(Error::Internal(format!(
                                "{a} - {b} lies in the kernel but f({a}) != f({b})"
                            )));
                        }
                    }
                }
                Ok(table)
            }
        }
    }

    pub fn classify(&self) -> Result<CasePartition> {
        let gamma0 = self.kernel()?;
        let partition = |case, c, tau, coset_reps| CasePartition {
            case,
            c,
            gamma0: gamma0.clone(),
            tau,
            coset_reps,
        };
        if let WittKind::Additive(g) = &self.kind {
            let case = if g.iter().all(Scalar::is_zero) {
                CaseTag::Abelian
            } else {
                // a nonzero homomorphism Z^r → ℚ(i) has infinite image
                CaseTag::Big
            };
            return Ok(partition(case, None, None, None));
        }

        let elements = self.group.enumerate()?;
        let values: Vec<Scalar> = elements.iter().map(|a| self.evaluate(a)).collect::<Result<_>>()?;
        let image: HashSet<&Scalar> = values.iter().collect();
        let first_nonzero = values.iter().find(|v| !v.is_zero()).cloned();
        match image.len() {
            1 => Ok(partition(CaseTag::Abelian, None, None, None)),
            2 => Ok(partition(CaseTag::Two, first_nonzero, None, None)),
            3 => {
                let c = first_nonzero.expect("image has a nonzero value");
                let minus_c = -&c;
                let mut tau = BTreeMap::new();
                for (a, v) in elements.iter().zip(&values) {
                    let t = if v.is_zero() {
                        0
                    } else if *v == c {
                        1
                    } else if *v == minus_c {
                        2
                    } else {
                        return Err(Error::Internal(format!(
                            "three-valued f has image other than {{0, {c}, {minus_c}}}"
                        )));
                    };
                    tau.insert(a.clone(), t);
                }
                for a in &elements {
                    for b in &elements {
                        if tau[&self.group.add(a, b)] != (tau[a] + tau[b]) % 3 {
                            return Err(Error::Internal(format!("τ is not additive at ({a}, {b})")));
                        }
                    }
                }
                let rep = |i: u8| {
                    elements
                        .iter()
                        .find(|a| tau[*a] == i)
                        .cloned()
                        .ok_or_else(|| Error::Internal(format!("τ misses {i}")))
                };
                let reps = [rep(0)?, rep(1)?, rep(2)?];
                Ok(partition(CaseTag::Three, Some(c), Some(tau), Some(reps)))
            }
            n => Err(Error::Internal(format!(
                "finite f with {n} values passed validation; such f must be zero"
            ))),
        }
    }
}
