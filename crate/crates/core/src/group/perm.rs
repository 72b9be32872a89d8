use std::collections::HashMap;

use super::{closure, max_order, FiniteGroup};
use crate::arith::{is_prime, order_mod, pow_mod};
use crate::{Error, Result};

/// A permutation of `0..n`, as the image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(pub Vec<u32>);

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((0..n as u32).collect())
    }

    /// Checks that `images` is a bijection of `0..images.len()`.
    pub fn new(images: Vec<u32>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x as usize >= n || std::mem::replace(&mut seen[x as usize], true) {
                return Err(Error::Group(format!("{images:?} is not a permutation")));
            }
        }
        Ok(Perm(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut out = vec![0u32; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            out[x as usize] = i as u32;
        }
        Perm(out)
    }
}

/// A permutation group with its concrete elements.
#[derive(Clone, Debug)]
pub struct PermGroup {
    pub group: FiniteGroup,
    pub perms: Vec<Perm>,
    index: HashMap<Perm, usize>,
}

impl PermGroup {
    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// Orbit of a point under the group, in sorted order.
    pub fn orbit(&self, x: usize) -> Vec<usize> {
        let mut o: Vec<usize> = self.perms.iter().map(|p| p.apply(x)).collect();
        o.sort_unstable();
        o.dedup();
        o
    }
}

/// Closure of a list of permutations under composition.
///
/// The group product is composition `g·h = g ∘ h`, so the group acts on
/// points on the left.
pub fn group_from_permutations(gens: &[Perm]) -> Result<PermGroup> {
    let n = gens.first().map_or(0, Perm::degree);
    if gens.iter().any(|g| g.degree() != n) {
        return Err(Error::Group("generators act on different sets".into()));
    }
    for g in gens {
        Perm::new(g.0.clone())?;
    }
    let c = closure(Perm::identity(n), gens, |a, b| a.compose(b), max_order())?;
    Ok(PermGroup { group: c.group, perms: c.elements, index: c.index })
}

/// `C_p ⋊_m C_t = ⟨σ, τ | σ^p = τ^t = 1, τστ⁻¹ = σ^m⟩` on pairs `σ^i τ^j`.
///
/// `p` must be a prime `≡ 3 (mod 4)` and `m` must generate the squares of
/// `Z_p^*`, so `t = (p − 1)/2`. Elements are labelled `s^i*t^j`.
pub fn semidirect_cp_ct(p: u64, m: u64) -> Result<FiniteGroup> {
    if !is_prime(p) || p % 4 != 3 {
        return Err(Error::Group(format!("p = {p} must be a prime congruent to 3 mod 4")));
    }
    let t = (p - 1) / 2;
    if order_mod(m % p, p) != Some(t) {
        return Err(Error::Group(format!("m = {m} does not generate the squares mod {p}")));
    }
    let m = m % p;
    let mul = |a: &(u64, u64), b: &(u64, u64)| ((a.0 + pow_mod(m, a.1, p) * b.0) % p, (a.1 + b.1) % t);
    let c = closure((0, 0), &[(1, 0), (0, 1)], mul, max_order())?;
    let mut group = c.group;
    let labels = c.elements.iter().map(|&(i, j)| affine_word(&[("s", i)], j)).collect();
    group.set_labels(labels)?;
    Ok(group)
}

/// `s^i*t^j` style words; zero exponents drop out, the identity is `1`.
pub(crate) fn affine_word(translation: &[(&str, u64)], j: u64) -> String {
    let mut parts: Vec<String> = translation
        .iter()
        .filter(|(_, e)| *e != 0)
        .map(|(name, e)| if *e == 1 { name.to_string() } else { format!("{name}^{e}") })
        .collect();
    match j {
        0 => {}
        1 => parts.push("t".into()),
        _ => parts.push(format!("t^{j}")),
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn five_cycle() {
        let g = group_from_permutations(&[Perm(vec![1, 2, 3, 4, 0])]).unwrap();
        assert_eq!(g.group.order(), 5);
        assert!(g.group.is_abelian());
        assert_eq!(g.perms[0], Perm::identity(5));
        assert_eq!(g.index_of(&Perm(vec![1, 2, 3, 4, 0])), Some(1));
    }

    #[test]
    fn rejects_bad_generators() {
        assert!(group_from_permutations(&[Perm(vec![0, 0, 1])]).is_err());
        assert!(group_from_permutations(&[Perm(vec![1, 0]), Perm(vec![0, 1, 2])]).is_err());
    }

    #[test]
    fn symmetric_group_s4() {
        let g = group_from_permutations(&[Perm(vec![1, 0, 2, 3]), Perm(vec![1, 2, 3, 0])]).unwrap();
        assert_eq!(g.group.order(), 24);
        assert!(!g.group.is_abelian());
        // Composition convention: (a∘b)(x) = a(b(x)).
        let a = Perm(vec![1, 0, 2, 3]);
        let b = Perm(vec![1, 2, 3, 0]);
        let ia = g.index_of(&a).unwrap();
        let ib = g.index_of(&b).unwrap();
        let ab = g.group.mul(ia, ib);
        assert_eq!(g.perms[ab], a.compose(&b));
        assert_eq!(a.compose(&b).apply(0), a.apply(b.apply(0)));
    }

    #[test]
    fn semidirect_21() {
        let g = semidirect_cp_ct(7, 2).unwrap();
        assert_eq!(g.order(), 21);
        assert!(!g.is_abelian());
        let (s, t) = (g.generators()[0], g.generators()[1]);
        assert_eq!(g.label(s), "s");
        assert_eq!(g.label(t), "t");
        // τστ⁻¹ = σ²
        let conj = g.mul(g.mul(t, s), g.inv(t));
        assert_eq!(conj, g.pow(s, 2));
        assert!(semidirect_cp_ct(5, 4).is_err());
        assert!(semidirect_cp_ct(7, 3).is_err());
    }

    #[test]
    fn semidirect_55() {
        let g = semidirect_cp_ct(11, 3).unwrap();
        assert_eq!(g.order(), 55);
        let (s, t) = (g.generators()[0], g.generators()[1]);
        assert_eq!(g.mul(g.mul(t, s), g.inv(t)), g.pow(s, 3));
        assert_eq!(g.element_order(s), 11);
        assert_eq!(g.element_order(t), 5);
    }
}
