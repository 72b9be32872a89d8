//! The integer group ring `Z[G]` and the group-ring form of the PDS identity
//! `S² = k·1 + λS + μ(G − S − 1)`.

mod characters;
mod cyclotomic;

use std::collections::BTreeMap;

use crate::arith::gcd;
use crate::group::FiniteGroup;
use crate::scalar::Scalar;
use crate::srg_params::SrgParams;
use crate::{Error, Result};

pub use characters::{abelian_characters, dual_pds, CharacterTable, DualReport, ThetaChoice};
pub use cyclotomic::{cyclotomic_polynomial, Cyclotomic};

/// `Σ a_g g` with one coefficient per group element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupRingElem<'g, T> {
    group: &'g FiniteGroup,
    coeffs: Vec<T>,
}

impl<'g, T: Scalar> GroupRingElem<'g, T> {
    pub fn zero(group: &'g FiniteGroup) -> Self {
        GroupRingElem { group, coeffs: vec![T::zero(); group.order()] }
    }

    /// The unit `δ₁`.
    pub fn one(group: &'g FiniteGroup) -> Self {
        let mut e = Self::zero(group);
        e.coeffs[0] = T::one();
        e
    }

    pub fn from_coeffs(group: &'g FiniteGroup, coeffs: Vec<T>) -> Result<Self> {
        if coeffs.len() != group.order() {
            return Err(Error::Group(format!("{} coefficients for a group of order {}", coeffs.len(), group.order())));
        }
        Ok(GroupRingElem { group, coeffs })
    }

    /// The indicator of a subset; repeated indices accumulate.
    pub fn from_subset(group: &'g FiniteGroup, subset: &[usize]) -> Self {
        let mut e = Self::zero(group);
        for &s in subset {
            e.coeffs[s] = e.coeffs[s].clone() + T::one();
        }
        e
    }

    pub fn group(&self) -> &'g FiniteGroup {
        self.group
    }

    pub fn coeffs(&self) -> &[T] {
        &self.coeffs
    }

    pub fn coeff(&self, g: usize) -> &T {
        &self.coeffs[g]
    }

    fn same_group(&self, other: &Self) -> Result<()> {
        if std::ptr::eq(self.group, other.group) || self.group == other.group {
            Ok(())
        } else {
            Err(Error::GroupMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a.clone() + b.clone()).collect();
        Ok(GroupRingElem { group: self.group, coeffs })
    }

    pub fn scale(&self, c: &T) -> Self {
        GroupRingElem { group: self.group, coeffs: self.coeffs.iter().map(|a| a.clone() * c.clone()).collect() }
    }

    /// The product in `Z[G]`: `c_h = Σ_g a_g b_{g⁻¹h}`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        self.same_group(other)?;
        let g = self.group;
        let mut out = Self::zero(g);
        let right: Vec<(usize, &T)> = other.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).collect();
        for (a, ca) in self.coeffs.iter().enumerate() {
            if ca.is_zero() {
                continue;
            }
            let row = g.row(a);
            for &(b, cb) in &right {
                let h = row[b] as usize;
                out.coeffs[h] = out.coeffs[h].clone() + ca.clone() * cb.clone();
            }
        }
        Ok(out)
    }

    /// `X^(m) = Σ a_g g^m`; coefficients accumulate when `g ↦ g^m` is not injective.
    pub fn power_map(&self, m: i64) -> Self {
        let mut out = Self::zero(self.group);
        for (g, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let h = self.group.pow(g, m);
                out.coeffs[h] = out.coeffs[h].clone() + c.clone();
            }
        }
        out
    }

    pub fn support(&self) -> Vec<usize> {
        (0..self.coeffs.len()).filter(|&g| !self.coeffs[g].is_zero()).collect()
    }
}

/// A subset `S` of a group proposed as a partial difference set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdsCandidate<'g> {
    pub group: &'g FiniteGroup,
    /// Sorted element indices.
    pub subset: Vec<usize>,
}

impl<'g> PdsCandidate<'g> {
    /// Rejects out-of-range and repeated elements.
    pub fn new(group: &'g FiniteGroup, subset: &[usize]) -> Result<Self> {
        let mut s = subset.to_vec();
        s.sort_unstable();
        if let Some(&bad) = s.iter().find(|&&x| x >= group.order()) {
            return Err(Error::Group(format!("element index {bad} out of range")));
        }
        if let Some(w) = s.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::Group(format!("element {} listed twice", group.label(w[0]))));
        }
        Ok(PdsCandidate { group, subset: s })
    }

    pub fn k(&self) -> usize {
        self.subset.len()
    }

    pub fn indicator(&self) -> Vec<bool> {
        let mut m = vec![false; self.group.order()];
        for &s in &self.subset {
            m[s] = true;
        }
        m
    }

    pub fn element(&self) -> GroupRingElem<'g, i64> {
        GroupRingElem::from_subset(self.group, &self.subset)
    }

    /// An element whose inverse is missing, if any.
    pub fn inverse_witness(&self) -> Option<usize> {
        let m = self.indicator();
        self.subset.iter().copied().find(|&s| !m[self.group.inv(s)])
    }

    /// `(k, λ, μ)` read off `S²`, if `S` is an inverse-closed PDS of nonempty
    /// complement. The group order is `v`.
    pub fn infer_params(&self) -> Option<SrgParams<i64>> {
        if self.subset.is_empty() || self.subset.contains(&0) || self.inverse_witness().is_some() {
            return None;
        }
        let sq = self.element().convolve(&self.element()).ok()?;
        let member = self.indicator();
        let mut lambda = None;
        let mut mu = None;
        for g in 1..self.group.order() {
            let slot = if member[g] { &mut lambda } else { &mut mu };
            match *slot {
                None => *slot = Some(sq.coeffs[g]),
                Some(x) if x != sq.coeffs[g] => return None,
                _ => {}
            }
        }
        Some(SrgParams::from_i64(self.group.order() as i64, self.k() as i64, lambda?, mu?))
    }
}

/// One coefficient of `S²` that disagrees with the PDS identity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoefficientFailure {
    pub element: usize,
    pub expected: i64,
    pub actual: i64,
}

/// Outcome of [`verify_pds`]. Every check is run even after a failure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PdsCertificate {
    pub params: SrgParams<i64>,
    pub size: usize,
    pub contains_identity: bool,
    /// An element of `S` whose inverse is not in `S`.
    pub inverse_witness: Option<usize>,
    /// Failed coefficients of `S² = k·1 + λS + μ(G − S − 1)`, by element index.
    pub failures: Vec<CoefficientFailure>,
}

impl PdsCertificate {
    pub fn passed(&self) -> bool {
        self.size as i64 == self.params.k
            && !self.contains_identity
            && self.inverse_witness.is_none()
            && self.failures.is_empty()
    }
}

/// Checks the group-ring identity coefficient by coefficient.
pub fn verify_pds(c: &PdsCandidate<'_>, p: &SrgParams<i64>) -> Result<PdsCertificate> {
    let v = c.group.order();
    if p.v != v as i64 {
        return Err(Error::InvalidParams(format!("parameters have v = {} but the group has order {v}", p.v)));
    }
    let s = c.element();
    let sq = s.convolve(&s)?;
    let member = c.indicator();
    let failures = (0..v)
        .filter_map(|g| {
            let expected = if g == 0 {
                p.k
            } else if member[g] {
                p.lambda
            } else {
                p.mu
            };
            (sq.coeffs[g] != expected).then_some(CoefficientFailure { element: g, expected, actual: sq.coeffs[g] })
        })
        .collect();
    Ok(PdsCertificate {
        params: p.clone(),
        size: c.k(),
        contains_identity: member[0],
        inverse_witness: c.inverse_witness(),
        failures,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiplierResult {
    pub m: i64,
    pub holds: bool,
    /// The first element of `S` (by index) whose `m`-th power leaves `S`.
    pub witness: Option<usize>,
}

/// Whether `S^(m) = S` as sets, for `m` coprime to `|G|`.
pub fn multiplier_test(c: &PdsCandidate<'_>, m: i64) -> Result<MultiplierResult> {
    let v = c.group.order() as u64;
    if gcd(m.unsigned_abs(), v) != 1 {
        return Err(Error::Inapplicable(format!("gcd({m}, {v}) ≠ 1")));
    }
    let member = c.indicator();
    let witness = c.subset.iter().copied().find(|&s| !member[c.group.pow(s, m)]);
    Ok(MultiplierResult { m, holds: witness.is_none(), witness })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientMultiplierResult {
    pub m: i64,
    pub holds: bool,
    /// `|G/G′|`.
    pub quotient_order: usize,
    /// Multiplicity of each coset in the image of `S`, by coset index.
    pub image: BTreeMap<usize, usize>,
    pub image_after_power: BTreeMap<usize, usize>,
}

/// Compares the image of `S` in `G/G′` with its `m`-th power map, as multisets.
pub fn quotient_multiplier_test(
    c: &PdsCandidate<'_>,
    p: &SrgParams<i64>,
    m: i64,
) -> Result<QuotientMultiplierResult> {
    if p.sqrt_delta().is_none() {
        return Err(Error::Inapplicable(format!("{p} is not of type II")));
    }
    if !verify_pds(c, p)?.passed() {
        return Err(Error::Inapplicable(format!("the subset is not a {p} PDS")));
    }
    let derived = c.group.derived_subgroup();
    let q = c.group.quotient(&derived)?;
    let qo = q.group.order();
    if gcd(m.unsigned_abs(), qo as u64) != 1 {
        return Err(Error::Inapplicable(format!("gcd({m}, |G/G′| = {qo}) ≠ 1")));
    }
    let mut image = BTreeMap::new();
    let mut after = BTreeMap::new();
    for &s in &c.subset {
        let x = q.map[s];
        *image.entry(x).or_insert(0) += 1;
        *after.entry(q.group.pow(x, m)).or_insert(0) += 1;
    }
    Ok(QuotientMultiplierResult { m, holds: image == after, quotient_order: qo, image, image_after_power: after })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{group_from_permutations, Perm};

    fn cyclic(n: u32) -> FiniteGroup {
        let t = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FiniteGroup::from_table(t, vec![1]).unwrap()
    }

    fn brute_difference_counts(n: usize, s: &[usize]) -> Vec<usize> {
        let mut c = vec![0; n];
        for &a in s {
            for &b in s {
                c[(a + n - b) % n] += 1;
            }
        }
        c
    }

    #[test]
    fn unit_and_small_product() {
        let g = cyclic(2);
        let x = GroupRingElem::<i64>::from_coeffs(&g, vec![3, -2]).unwrap();
        assert_eq!(GroupRingElem::one(&g).convolve(&x).unwrap(), x);
        let s = GroupRingElem::<i64>::from_coeffs(&g, vec![1, 1]).unwrap();
        assert_eq!(s.convolve(&s).unwrap().coeffs(), &[2, 2]);
    }

    #[test]
    fn group_mismatch() {
        let (a, b) = (cyclic(3), cyclic(4));
        let x = GroupRingElem::<i64>::one(&a);
        let y = GroupRingElem::<i64>::one(&b);
        assert!(matches!(x.convolve(&y), Err(Error::GroupMismatch)));
    }

    #[test]
    fn bigint_coefficients() {
        use num_bigint::BigInt;
        let g = cyclic(5);
        let x = GroupRingElem::<BigInt>::from_subset(&g, &[1, 2, 3, 4]);
        let sq = x.convolve(&x).unwrap();
        assert_eq!(sq.coeff(0), &BigInt::from(4));
        assert_eq!(sq.coeff(1), &BigInt::from(3));
    }

    #[test]
    fn convolution_is_associative_on_s3() {
        let g = group_from_permutations(&[Perm(vec![1, 0, 2]), Perm(vec![1, 2, 0])]).unwrap().group;
        let a = GroupRingElem::<i64>::from_coeffs(&g, vec![1, -2, 0, 3, 1, 0]).unwrap();
        let b = GroupRingElem::<i64>::from_coeffs(&g, vec![0, 1, 1, -1, 2, 5]).unwrap();
        let c = GroupRingElem::<i64>::from_coeffs(&g, vec![2, 0, -3, 1, 0, 1]).unwrap();
        let left = a.convolve(&b).unwrap().convolve(&c).unwrap();
        let right = a.convolve(&b.convolve(&c).unwrap()).unwrap();
        assert_eq!(left, right);
        assert_ne!(a.convolve(&b).unwrap(), b.convolve(&a).unwrap());
    }

    #[test]
    fn paley_13() {
        let g = cyclic(13);
        let squares = [1, 3, 4, 9, 10, 12];
        let counts = brute_difference_counts(13, &squares);
        assert_eq!(counts[0], 6);
        for x in 1..13 {
            assert_eq!(counts[x], if squares.contains(&x) { 2 } else { 3 });
        }
        let c = PdsCandidate::new(&g, &squares).unwrap();
        let cert = verify_pds(&c, &SrgParams::from_i64(13, 6, 2, 3)).unwrap();
        assert!(cert.passed(), "{cert:?}");
        assert_eq!(c.infer_params(), Some(SrgParams::from_i64(13, 6, 2, 3)));
        assert!(multiplier_test(&c, 4).unwrap().holds);
        let m2 = multiplier_test(&c, 2).unwrap();
        assert_eq!(m2.witness, Some(1));
        assert!(multiplier_test(&c, 13).is_err());
    }

    #[test]
    fn broken_set_reports_coefficients() {
        let g = cyclic(13);
        let c = PdsCandidate::new(&g, &[1, 3, 4, 9, 10]).unwrap();
        let cert = verify_pds(&c, &SrgParams::from_i64(13, 6, 2, 3)).unwrap();
        assert!(!cert.passed());
        assert_eq!(cert.inverse_witness, Some(1));
        assert_eq!(cert.failures[0], CoefficientFailure { element: 0, expected: 6, actual: 4 });
        assert!(verify_pds(&c, &SrgParams::from_i64(14, 6, 2, 3)).is_err());
        assert!(PdsCandidate::new(&g, &[1, 1]).is_err());
    }

    #[test]
    fn power_map_involution() {
        let g = group_from_permutations(&[Perm(vec![1, 2, 3, 0]), Perm(vec![1, 0, 2, 3])]).unwrap().group;
        let x = GroupRingElem::<i64>::from_subset(&g, &[1, 4, 7, 19]);
        assert_eq!(x.power_map(-1).power_map(-1), x);
        assert_eq!(x.power_map(1), x);
    }
}
