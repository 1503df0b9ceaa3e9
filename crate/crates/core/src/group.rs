//! Finitely generated abelian groups `Z^r × Z/m₁ × … × Z/m_k`.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exactnum::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    pub rank: usize,
    #[serde(default)]
    pub torsion: Vec<u64>,
}

/// An element in canonical form: free coordinates first, then torsion
/// coordinates reduced into `0..m_j`. The derived ordering is lexicographic
/// over that sequence.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    free: Vec<i64>,
    torsion: Vec<u64>,
}

impl GroupElement {
    pub fn free(&self) -> &[i64] {
        &self.free
    }

    pub fn torsion(&self) -> &[u64] {
        &self.torsion
    }

    pub fn is_zero(&self) -> bool {
        self.free.iter().all(|&x| x == 0) && self.torsion.iter().all(|&t| t == 0)
    }

    /// Max-norm of the free part.
    pub fn free_norm(&self) -> u64 {
        self.free.iter().map(|x| x.unsigned_abs()).max().unwrap_or(0)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for x in self
            .free
            .iter()
            .map(|x| x.to_string())
            .chain(self.torsion.iter().map(|t| t.to_string()))
        {
            if !first {
                f.write_str(",")?;
            }
            f.write_str(&x)?;
            first = false;
        }
        Ok(())
    }
}

impl Serialize for GroupElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut factors: Vec<String> = Vec::new();
        match self.rank {
            0 => {}
            1 => factors.push("Z".into()),
            r => factors.push(format!("Z^{r}")),
        }
        factors.extend(self.torsion.iter().map(|m| format!("Z/{m}")));
        if factors.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&factors.join("×"))
        }
    }
}

impl GroupSpec {
    pub fn new(rank: usize, torsion: Vec<u64>) -> Result<Self> {
        let spec = Self { rank, torsion };
        spec.check()?;
        Ok(spec)
    }

    /// `Z/n`.
    pub fn cyclic(n: u64) -> Self {
        Self::new(0, vec![n]).expect("cyclic group order must be at least 2")
    }

    /// `Z^rank`.
    pub fn free(rank: usize) -> Self {
        Self {
            rank,
            torsion: Vec::new(),
        }
    }

    /// Rejects torsion orders below 2; call after deserializing.
    pub fn check(&self) -> Result<()> {
        if let Some(m) = self.torsion.iter().find(|&&m| m < 2) {
            return Err(Error::Parse {
                what: "group",
                input: format!("torsion order {m} (orders must be at least 2)"),
            });
        }
        Ok(())
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    /// Number of elements, `None` when infinite.
    pub fn order(&self) -> Option<u64> {
        self.is_finite().then(|| self.torsion.iter().product())
    }

    pub fn zero(&self) -> GroupElement {
        GroupElement {
            free: vec![0; self.rank],
            torsion: vec![0; self.torsion.len()],
        }
    }

    /// Builds an element from raw integer coordinates, reducing torsion parts.
    pub fn element(&self, coords: &[i64]) -> Result<GroupElement> {
        if coords.len() != self.rank + self.torsion.len() {
            return Err(Error::ShapeMismatch {
                group: self.to_string(),
                element: format!("{coords:?}"),
            });
        }
        let (free, tors) = coords.split_at(self.rank);
        Ok(GroupElement {
            free: free.to_vec(),
            torsion: tors
                .iter()
                .zip(&self.torsion)
                .map(|(&t, &m)| t.rem_euclid(m as i64) as u64)
                .collect(),
        })
    }

    /// Element literal: comma-separated integers, free part first.
    pub fn parse_element(&self, literal: &str) -> Result<GroupElement> {
        let coords = if literal.is_empty() {
            Vec::new()
        } else {
            literal
                .split(',')
                .map(|c| c.parse::<i64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map_err(|_| Error::Parse {
                    what: "group element",
                    input: literal.to_string(),
                })?
        };
        self.element(&coords)
    }

    pub fn conforms(&self, a: &GroupElement) -> Result<()> {
        let ok = a.free.len() == self.rank
            && a.torsion.len() == self.torsion.len()
            && a.torsion.iter().zip(&self.torsion).all(|(t, m)| t < m);
        if ok {
            Ok(())
        } else {
            Err(Error::ShapeMismatch {
                group: self.to_string(),
                element: a.to_string(),
            })
        }
    }

    /// Componentwise sum, checking both operands against the group.
    pub fn checked_add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.conforms(a)?;
        self.conforms(b)?;
        Ok(self.add(a, b))
    }

    /// Componentwise sum. Operands are assumed to conform.
    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        GroupElement {
            free: a.free.iter().zip(&b.free).map(|(x, y)| x + y).collect(),
            torsion: a
                .torsion
                .iter()
                .zip(&b.torsion)
                .zip(&self.torsion)
                .map(|((x, y), m)| (x + y) % m)
                .collect(),
        }
    }

    pub fn neg(&self, a: &GroupElement) -> GroupElement {
        GroupElement {
            free: a.free.iter().map(|x| -x).collect(),
            torsion: a.torsion.iter().zip(&self.torsion).map(|(x, m)| (m - x) % m).collect(),
        }
    }

    pub fn sub(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.add(a, &self.neg(b))
    }

    pub fn sum<'a>(&self, items: impl IntoIterator<Item = &'a GroupElement>) -> GroupElement {
        items.into_iter().fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    /// Every element of a finite group, in lexicographic order.
    pub fn enumerate(&self) -> Result<Vec<GroupElement>> {
        if !self.is_finite() {
            return Err(Error::InfiniteGroup(self.to_string()));
        }
        Ok(self.box_elements(0))
    }

    /// Elements whose free part has max-norm at most `window.radius`.
    pub fn window_elements(&self, window: &Window) -> Vec<GroupElement> {
        self.box_elements(window.radius)
    }

    /// Window elements extended by the window's padding.
    pub fn padded_elements(&self, window: &Window) -> Vec<GroupElement> {
        self.box_elements(window.outer_radius())
    }

    fn box_elements(&self, radius: u64) -> Vec<GroupElement> {
        let r = radius as i64;
        let mut ranges = vec![(-r, r); self.rank];
        ranges.extend(self.torsion.iter().map(|&m| (0, m as i64 - 1)));
        let mut out = Vec::new();
        let mut cur: Vec<i64> = ranges.iter().map(|r| r.0).collect();
        loop {
            out.push(self.element(&cur).expect("coordinate count matches spec"));
            // odometer increment, last coordinate fastest
            let mut k = ranges.len();
            loop {
                if k == 0 {
                    return out;
                }
                k -= 1;
                if cur[k] < ranges[k].1 {
                    cur[k] += 1;
                    break;
                }
                cur[k] = ranges[k].0;
            }
        }
    }
}

/// A finite symmetric truncation of `Γ`. Tuples are drawn from the inner
/// radius; intermediate degrees may reach `radius + padding`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub radius: u64,
    pub padding: u64,
}

impl Window {
    /// Padding defaults to twice the radius, enough for any sum of three
    /// window elements.
    pub fn new(radius: u64) -> Self {
        Self {
            radius,
            padding: 2 * radius,
        }
    }

    pub fn with_padding(radius: u64, padding: u64) -> Self {
        Self { radius, padding }
    }

    pub fn outer_radius(&self) -> u64 {
        self.radius + self.padding
    }

    pub fn contains(&self, a: &GroupElement) -> bool {
        a.free_norm() <= self.radius
    }

    pub fn contains_padded(&self, a: &GroupElement) -> bool {
        a.free_norm() <= self.outer_radius()
    }
}

/// A subgroup of `Γ`: either materialised (finite parent) or the kernel of a
/// linear form on the free coordinates (infinite parent).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SubgroupTable {
    Finite {
        parent: GroupSpec,
        elements: BTreeSet<GroupElement>,
    },
    Kernel {
        parent: GroupSpec,
        form: Vec<Scalar>,
    },
}

impl SubgroupTable {
    /// Materialises a subgroup of a finite group, verifying closure.
    pub fn from_elements(parent: &GroupSpec, elements: impl IntoIterator<Item = GroupElement>) -> Result<Self> {
        if !parent.is_finite() {
            return Err(Error::InfiniteGroup(parent.to_string()));
        }
        let elements: BTreeSet<_> = elements.into_iter().collect();
        for e in &elements {
            parent.conforms(e)?;
        }
        let table = Self::Finite {
            parent: parent.clone(),
            elements,
        };
        table.verify()?;
        Ok(table)
    }

    pub fn kernel_of_form(parent: &GroupSpec, form: Vec<Scalar>) -> Self {
        Self::Kernel {
            parent: parent.clone(),
            form,
        }
    }

    pub fn parent(&self) -> &GroupSpec {
        match self {
            Self::Finite { parent, .. } | Self::Kernel { parent, .. } => parent,
        }
    }

    pub fn elements(&self) -> Option<&BTreeSet<GroupElement>> {
        match self {
            Self::Finite { elements, .. } => Some(elements),
            Self::Kernel { .. } => None,
        }
    }

    pub fn contains(&self, a: &GroupElement) -> bool {
        match self {
            Self::Finite { elements, .. } => elements.contains(a),
            Self::Kernel { form, .. } => form
                .iter()
                .zip(a.free())
                .map(|(c, &x)| c * &Scalar::from_int(x))
                .sum::<Scalar>()
                .is_zero(),
        }
    }

    /// Exhaustive closure check for materialised tables. Kernels of linear
    /// forms are subgroups by construction.
    pub fn verify(&self) -> Result<()> {
        let Self::Finite { parent, elements } = self else {
            return Ok(());
        };
        if !elements.contains(&parent.zero()) {
            return Err(Error::NotSubgroup("missing the zero element".into()));
        }
        for a in elements {
            if !elements.contains(&parent.neg(a)) {
                return Err(Error::NotSubgroup(format!("-({a}) missing")));
            }
            for b in elements {
                let s = parent.add(a, b);
                if !elements.contains(&s) {
                    return Err(Error::NotSubgroup(format!("{a} + {b} = {s} missing")));
                }
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Coset {
    pub representative: GroupElement,
    pub elements: Vec<GroupElement>,
}

/// Partitions a finite group into cosets of `sub`. Each coset is represented
/// by its lexicographically least element, and cosets are listed in order of
/// their representatives, so the subgroup itself comes first.
pub fn coset_decompose(spec: &GroupSpec, sub: &SubgroupTable) -> Result<Vec<Coset>> {
    let all = spec.enumerate()?;
    sub.verify()?;
    let members: Vec<GroupElement> = match sub {
        SubgroupTable::Finite { elements, .. } => elements.iter().cloned().collect(),
        SubgroupTable::Kernel { .. } => all.iter().filter(|a| sub.contains(a)).cloned().collect(),
    };
    let mut seen = BTreeSet::new();
    let mut cosets = Vec::new();
    for a in &all {
        if seen.contains(a) {
            continue;
        }
        let mut elements: Vec<GroupElement> = members.iter().map(|h| spec.add(a, h)).collect();
        elements.sort();
        seen.extend(elements.iter().cloned());
        cosets.push(Coset {
            representative: a.clone(),
            elements,
        });
    }
    Ok(cosets)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> GroupSpec {
        GroupSpec::cyclic(n)
    }

    #[test]
    fn addition_examples() {
        let g = z(4);
        let e = |x| g.element(&[x]).unwrap();
        assert_eq!(g.checked_add(&e(3), &e(2)).unwrap(), e(1));
        let h = GroupSpec::new(1, vec![2]).unwrap();
        let a = h.element(&[1, 1]).unwrap();
        let b = h.element(&[2, 1]).unwrap();
        assert_eq!(h.add(&a, &b), h.element(&[3, 0]).unwrap());
        assert_eq!(h.add(&a, &h.zero()), a);
    }

    #[test]
    fn shape_mismatch_is_reported() {
        let g = z(4);
        let other = GroupSpec::new(1, vec![]).unwrap().element(&[1]).unwrap();
        assert!(matches!(
            g.checked_add(&g.zero(), &other),
            Err(Error::ShapeMismatch { .. })
        ));
        assert!(g.parse_element("1,2").is_err());
        assert!(g.parse_element("x").is_err());
    }

    #[test]
    fn enumeration() {
        let lits = |v: Vec<GroupElement>| v.iter().map(|e| e.to_string()).collect::<Vec<_>>();
        assert_eq!(lits(z(3).enumerate().unwrap()), ["0", "1", "2"]);
        let k4 = GroupSpec::new(0, vec![2, 2]).unwrap();
        assert_eq!(lits(k4.enumerate().unwrap()), ["0,0", "0,1", "1,0", "1,1"]);
        assert!(matches!(GroupSpec::free(1).enumerate(), Err(Error::InfiniteGroup(_))));
    }

    #[test]
    fn windows() {
        let lits = |v: Vec<GroupElement>| v.iter().map(|e| e.to_string()).collect::<Vec<_>>();
        assert_eq!(
            lits(GroupSpec::free(1).window_elements(&Window::new(2))),
            ["-2", "-1", "0", "1", "2"]
        );
        assert_eq!(lits(z(3).window_elements(&Window::new(5))), ["0", "1", "2"]);
        let h = GroupSpec::new(1, vec![2]).unwrap();
        assert_eq!(h.window_elements(&Window::new(1)).len(), 6);
    }

    #[test]
    fn cosets() {
        let g = z(4);
        let e = |x| g.element(&[x]).unwrap();
        let sub = SubgroupTable::from_elements(&g, [e(0), e(2)]).unwrap();
        let cs = coset_decompose(&g, &sub).unwrap();
        assert_eq!(cs.len(), 2);
        assert_eq!(cs[0].representative, e(0));
        assert_eq!(cs[0].elements, vec![e(0), e(2)]);
        assert_eq!(cs[1].representative, e(1));
        assert_eq!(cs[1].elements, vec![e(1), e(3)]);

        let trivial = SubgroupTable::from_elements(&z(3), [z(3).zero()]).unwrap();
        let cs = coset_decompose(&z(3), &trivial).unwrap();
        assert_eq!(cs.len(), 3);
        assert!(cs.iter().all(|c| c.elements.len() == 1));

        assert!(matches!(
            SubgroupTable::from_elements(&g, [e(0), e(1)]),
            Err(Error::NotSubgroup(_))
        ));
    }

    #[test]
    fn kernel_membership() {
        let g = GroupSpec::free(2);
        let k = SubgroupTable::kernel_of_form(&g, vec![Scalar::one(), Scalar::from_int(-2)]);
        assert!(k.contains(&g.element(&[2, 1]).unwrap()));
        assert!(!k.contains(&g.element(&[1, 1]).unwrap()));
    }

    #[test]
    fn literal_reduces_torsion() {
        let g = GroupSpec::new(1, vec![3]).unwrap();
        let a = g.parse_element("-4,-1").unwrap();
        assert_eq!(a.free(), &[-4]);
        assert_eq!(a.torsion(), &[2]);
        assert_eq!(a.to_string(), "-4,2");
    }
}
