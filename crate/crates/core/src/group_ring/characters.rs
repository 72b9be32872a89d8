//! Characters of finite abelian groups and the dual of an abelian PDS.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{verify_pds, Cyclotomic, PdsCandidate};
use crate::arith::lcm;
use crate::group::FiniteGroup;
use crate::srg_params::SrgParams;
use crate::{Error, Result};

/// `G = ⟨x₁⟩ × … × ⟨x_r⟩` together with the coordinates of every element.
///
/// The character indexed by element `c` (coordinates `(c_i)`) sends `x` with
/// coordinates `(a_i)` to `ζ_e^{Σ a_i c_i e/n_i}`, so characters are indexed
/// by group elements and pointwise products match group products.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub exponent: usize,
    /// Generators of the cyclic factors.
    pub basis: Vec<usize>,
    /// Orders of the cyclic factors.
    pub orders: Vec<usize>,
    /// `coords[g][i]` is the exponent of `basis[i]` in `g`.
    pub coords: Vec<Vec<usize>>,
}

impl CharacterTable {
    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// `j` with `χ_c(x) = ζ_e^j`.
    pub fn exponent_of(&self, c: usize, x: usize) -> usize {
        let (a, b) = (&self.coords[x], &self.coords[c]);
        let e = self.exponent;
        (0..self.orders.len()).map(|i| a[i] * b[i] % self.orders[i] * (e / self.orders[i])).sum::<usize>() % e
    }

    pub fn value(&self, c: usize, x: usize) -> Cyclotomic {
        let mut powers = vec![0i64; self.exponent];
        powers[self.exponent_of(c, x)] = 1;
        Cyclotomic::from_powers(self.exponent, &powers)
    }

    /// `χ_c(S) = Σ_{s∈S} χ_c(s)`.
    pub fn sum(&self, c: usize, subset: &[usize]) -> Cyclotomic {
        let mut powers = vec![0i64; self.exponent];
        for &s in subset {
            powers[self.exponent_of(c, s)] += 1;
        }
        Cyclotomic::from_powers(self.exponent, &powers)
    }

    /// `Σ_g χ_c(g) χ_d(g)⁻¹ = 0` on `samples` random pairs `c ≠ d`.
    pub fn check_orthogonality(&self, samples: usize, seed: u64) -> bool {
        let n = self.len();
        if n < 2 {
            return true;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..samples).all(|_| {
            let c = rng.gen_range(0..n);
            let d = (c + rng.gen_range(1..n)) % n;
            let mut powers = vec![0i64; self.exponent];
            for g in 0..n {
                let j = (self.exponent_of(c, g) + self.exponent - self.exponent_of(d, g)) % self.exponent;
                powers[j] += 1;
            }
            Cyclotomic::from_powers(self.exponent, &powers).as_integer() == Some(0)
        })
    }

    /// The decomposition as text, e.g. `#3 (order 4) x #5 (order 4)`.
    pub fn describe(&self, g: &FiniteGroup) -> String {
        self.basis
            .iter()
            .zip(&self.orders)
            .map(|(&b, &o)| format!("{} (order {o})", g.label(b)))
            .collect::<Vec<_>>()
            .join(" x ")
    }
}

/// Splits an abelian group into cyclic factors and tabulates coordinates.
pub fn abelian_characters(g: &FiniteGroup) -> Result<CharacterTable> {
    if !g.is_abelian() {
        return Err(Error::Group("characters are only tabulated for abelian groups".into()));
    }
    let n = g.order();
    let mut by_order: Vec<usize> = (1..n).collect();
    by_order.sort_by_key(|&x| (std::cmp::Reverse(g.element_order(x)), x));
    let mut basis = Vec::new();
    if !decompose(g, &by_order, &mut basis, &[0]) {
        return Err(Error::Group("no cyclic decomposition found".into()));
    }
    let orders: Vec<usize> = basis.iter().map(|&b| g.element_order(b)).collect();
    let mut coords = vec![Vec::new(); n];
    let mut digits = vec![0usize; basis.len()];
    loop {
        let x = basis.iter().zip(&digits).fold(0, |acc, (&b, &d)| g.mul(acc, g.pow(b, d as i64)));
        coords[x] = digits.clone();
        let mut i = 0;
        while i < digits.len() {
            digits[i] += 1;
            if digits[i] < orders[i] {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        if i == digits.len() {
            break;
        }
    }
    let exponent = orders.iter().fold(1, |a, &o| lcm(a as u64, o as u64) as usize);
    Ok(CharacterTable { exponent, basis, orders, coords })
}

/// Depth-first search for generators of maximal order whose cyclic groups
/// meet the current span trivially.
fn decompose(g: &FiniteGroup, candidates: &[usize], basis: &mut Vec<usize>, span: &[usize]) -> bool {
    if span.len() == g.order() {
        return true;
    }
    let mut member = vec![false; g.order()];
    for &s in span {
        member[s] = true;
    }
    for &x in candidates {
        let o = g.element_order(x);
        if member[x] || span.len() * o > g.order() || !g.order().is_multiple_of(span.len() * o) {
            continue;
        }
        let cyclic: Vec<usize> = (1..o).map(|i| g.pow(x, i as i64)).collect();
        if cyclic.iter().any(|&y| member[y]) {
            continue;
        }
        let mut next = Vec::with_capacity(span.len() * o);
        for &s in span {
            let mut y = s;
            for _ in 0..o {
                next.push(y);
                y = g.mul(y, x);
            }
        }
        basis.push(x);
        if decompose(g, candidates, basis, &next) {
            return true;
        }
        basis.pop();
    }
    false
}

/// Which nontrivial eigenvalue selects the dual subset.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ThetaChoice {
    First,
    Second,
}

/// The dual subset `S* = {χ : χ(S) = θ}` and the checks run on it.
#[derive(Clone, Debug)]
pub struct DualReport {
    pub theta: i64,
    /// `S*` as group elements through the identification `G* ≅ G`.
    pub subset: Vec<usize>,
    /// `m₁` (or `m₂` for the second eigenvalue).
    pub expected_size: i64,
    /// Count of nontrivial characters in each eigenvalue cell: `(θ₁, θ₂)`.
    pub cell_sizes: (usize, usize),
    pub trivial_in_k_cell: bool,
    pub dual_params: Option<SrgParams<i64>>,
    pub dual_certified: bool,
    pub sqrt_delta: i64,
    pub dual_sqrt_delta: Option<i64>,
    pub decomposition: String,
}

impl DualReport {
    pub fn size_matches(&self) -> bool {
        self.subset.len() as i64 == self.expected_size
    }

    /// `√Δ* · √Δ = v`.
    pub fn sqrt_delta_matches(&self, v: i64) -> bool {
        self.dual_sqrt_delta.is_some_and(|d| d * self.sqrt_delta == v)
    }

    pub fn passed(&self, v: i64) -> bool {
        self.size_matches() && self.dual_certified && self.trivial_in_k_cell && self.sqrt_delta_matches(v)
    }
}

/// Character sums of an abelian type II PDS and its dual.
pub fn dual_pds(c: &PdsCandidate<'_>, p: &SrgParams<i64>, choice: ThetaChoice) -> Result<DualReport> {
    let spec = p.spectrum()?;
    let (Some(t1), Some(t2), Some(sd)) = (spec.theta1(), spec.theta2(), spec.sqrt_delta) else {
        return Err(Error::Inapplicable(format!("{p} is not of type II")));
    };
    let (m1, m2) = spec
        .m1_m2()
        .ok_or_else(|| Error::InvalidParams(format!("{p} has no integral multiplicities")))?;
    if !verify_pds(c, p)?.passed() {
        return Err(Error::Inapplicable(format!("the subset is not a {p} PDS")));
    }
    let table = abelian_characters(c.group)?;
    let mut cells = (Vec::new(), Vec::new());
    let mut trivial_in_k_cell = false;
    for chi in 0..table.len() {
        let sum = table.sum(chi, &c.subset);
        let val = sum.as_integer();
        if chi == 0 {
            trivial_in_k_cell = val == Some(p.k);
            continue;
        }
        match val {
            Some(x) if x == t1 => cells.0.push(chi),
            Some(x) if x == t2 => cells.1.push(chi),
            _ => {
                return Err(Error::InvalidParams(format!(
                    "character {chi} sums to {sum}, which is not one of k = {}, θ₁ = {t1}, θ₂ = {t2}",
                    p.k
                )))
            }
        }
    }
    let cell_sizes = (cells.0.len(), cells.1.len());
    let (theta, subset, expected_size) = match choice {
        ThetaChoice::First => (t1, cells.0, m1),
        ThetaChoice::Second => (t2, cells.1, m2),
    };
    let dual = PdsCandidate::new(c.group, &subset)?;
    let dual_params = dual.infer_params();
    let dual_certified = match &dual_params {
        Some(dp) => verify_pds(&dual, dp)?.passed(),
        None => false,
    };
    let dual_sqrt_delta = dual_params.as_ref().and_then(|dp| dp.sqrt_delta());
    Ok(DualReport {
        theta,
        subset,
        expected_size,
        cell_sizes,
        trivial_in_k_cell,
        dual_params,
        dual_certified,
        sqrt_delta: sd,
        dual_sqrt_delta,
        decomposition: table.describe(c.group),
    })
}
