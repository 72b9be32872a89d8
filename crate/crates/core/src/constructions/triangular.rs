use super::Certification;
use crate::arith::prime_power;
use crate::cayley::{pds_from_regular_action, triangular_graph, two_subsets, Graph, RegularAction};
use crate::finite_field::{FieldElem, Gf};
use crate::group::{affine_word, closure, max_order, FiniteGroup, Perm};
use crate::srg_params::{triangular_params, SrgParams};
use crate::{Error, Result};

/// `T_q` as a Cayley graph of the affine group `{x ↦ ax + b : a a nonzero square}`.
#[derive(Clone, Debug)]
pub struct TriangularConstruction {
    pub q: u64,
    /// `(q − 1)/2`.
    pub t: u64,
    pub field: Gf,
    /// The square of the primitive element.
    pub m: FieldElem,
    /// Vertices are the 2-subsets of the field in [`two_subsets`] order.
    pub graph: Graph,
    /// Elements labelled `s^i*t^j` (or `s1^i1*…*t^j` when `q` is not prime).
    pub group: FiniteGroup,
    /// `maps[g] = (a, b)`: element `g` acts as `x ↦ ax + b`.
    pub maps: Vec<(FieldElem, FieldElem)>,
    /// Translations by the polynomial basis of the field.
    pub sigma: Vec<Perm>,
    pub tau: Perm,
    pub subset: Vec<usize>,
    /// `bijection[g]` is the vertex `g⁻¹({0, 1})`.
    pub bijection: Vec<usize>,
    pub certification: Certification,
}

/// Ordered pairs of field elements by their integer codes.
pub type OrderedPairs = Vec<(u32, u32)>;

fn pair_index(q: usize, a: usize, b: usize) -> usize {
    let (a, b) = (a.min(b), a.max(b));
    a * q - a * (a + 1) / 2 + (b - a - 1)
}

/// Builds the group, extracts `S` from its regular action on `T_q` with base
/// vertex `{0, 1}`, and certifies it against the triangular parameters.
///
/// For `q ≡ 1 (mod 4)` the group has the right order but is not transitive;
/// the error reports the orbit of `{0, 1}`.
pub fn triangular_pds(q: u64) -> Result<TriangularConstruction> {
    let (p, d) = prime_power(q).ok_or_else(|| Error::InvalidParams(format!("q = {q} is not a prime power")))?;
    if p == 2 {
        return Err(Error::InvalidParams(format!("q = {q} is even")));
    }
    if q < 5 {
        return Err(Error::InvalidParams(format!("q = {q} is too small for a triangular graph")));
    }
    let field = Gf::new(p as u32, d)?;
    let f = &field;
    let t = (q - 1) / 2;
    let prim = f.primitive();
    let m = f.mul(prim, prim);

    let mut gens: Vec<(FieldElem, FieldElem)> =
        (0..d).map(|i| (FieldElem::ONE, FieldElem((p as u32).pow(i)))).collect();
    gens.push((m, FieldElem::ZERO));
    let c = closure((FieldElem::ONE, FieldElem::ZERO), &gens, |x, y| (f.mul(x.0, y.0), f.add(f.mul(x.0, y.1), x.1)), max_order())?;
    let mut group = c.group;
    let maps = c.elements;

    let names: Vec<String> = if d == 1 { vec!["s".into()] } else { (1..=d).map(|i| format!("s{i}")).collect() };
    let labels = maps
        .iter()
        .map(|&(a, b)| {
            let j = f.log(a).expect("a is nonzero") as u64 / 2;
            let digits = f.coeffs(b);
            let parts: Vec<(&str, u64)> = names.iter().zip(&digits).map(|(n, &e)| (n.as_str(), e as u64)).collect();
            affine_word(&parts, j)
        })
        .collect();
    group.set_labels(labels)?;

    let qn = q as usize;
    let pairs = two_subsets(qn);
    let image = |(a, b): (FieldElem, FieldElem), x: usize| f.add(f.mul(a, FieldElem(x as u32)), b).0 as usize;
    let action: Vec<u32> = maps
        .iter()
        .flat_map(|&g| pairs.iter().map(move |&(x, y)| pair_index(qn, image(g, x), image(g, y)) as u32))
        .collect();
    let perm_of = |g: (FieldElem, FieldElem)| Perm(pairs.iter().map(|&(x, y)| pair_index(qn, image(g, x), image(g, y)) as u32).collect());
    let sigma: Vec<Perm> = gens[..d as usize].iter().map(|&g| perm_of(g)).collect();
    let tau = perm_of(gens[d as usize]);

    let graph = triangular_graph(qn)?;
    let action = RegularAction::new(&group, pairs.len(), action)?;
    let extracted = pds_from_regular_action(&graph, &action, 0).map_err(|e| match e {
        Error::NotSharplyTransitive(msg) if q % 4 == 1 => Error::NotSharplyTransitive(format!(
            "{msg}; q = {q} is 1 mod 4, so -1 is a square and {{0,1}}, {{0,-1}} lie in one orbit"
        )),
        e => e,
    })?;
    let params: SrgParams<i64> = triangular_params(q as i64)?;

    let out = TriangularConstruction {
        q,
        t,
        certification: Certification::run(&group, &extracted.subset, &params)?,
        field,
        m,
        graph,
        group,
        maps,
        sigma,
        tau,
        subset: extracted.subset,
        bijection: extracted.bijection,
    };
    out.check_invariants()?;
    Ok(out)
}

impl TriangularConstruction {
    fn element(&self, a: FieldElem, b: FieldElem) -> usize {
        self.maps.iter().position(|&x| x == (a, b)).expect("affine map lies in the group")
    }

    /// `σ`, translation by 1, and `τ`, multiplication by `m`.
    pub fn sigma_tau(&self) -> (usize, usize) {
        (self.element(FieldElem::ONE, FieldElem::ONE), self.element(self.m, FieldElem::ZERO))
    }

    /// Ordered pairs `(a, a + r)` and `(a, a − r)` over nonzero squares `r`.
    pub fn ordered_halves(&self) -> (OrderedPairs, OrderedPairs) {
        let f = &self.field;
        let squares: Vec<FieldElem> = (0..self.t).map(|j| f.pow(self.m, j)).collect();
        let mut plus = Vec::new();
        let mut minus = Vec::new();
        for a in f.elements() {
            for &r in &squares {
                plus.push((a.0, f.add(a, r).0));
                minus.push((a.0, f.sub(a, r).0));
            }
        }
        plus.sort_unstable();
        minus.sort_unstable();
        (plus, minus)
    }

    /// `S = {σ, σ⁻¹} ∪ T ∪ Tσ⁻¹ ∪ σT ∪ σTσ⁻¹` with `T` the nonidentity powers of `τ`.
    pub fn predicted_subset(&self) -> (Vec<usize>, Vec<usize>, Vec<usize>) {
        let g = &self.group;
        let (s, tau) = self.sigma_tau();
        let si = g.inv(s);
        let tt: Vec<usize> = (1..self.t as i64).map(|j| g.pow(tau, j)).collect();
        let conj: Vec<usize> = tt.iter().map(|&x| g.mul(g.mul(s, x), si)).collect();
        let mut all = vec![s, si];
        all.extend(&tt);
        all.extend(tt.iter().map(|&x| g.mul(x, si)));
        all.extend(tt.iter().map(|&x| g.mul(s, x)));
        all.extend(&conj);
        all.sort_unstable();
        (all, tt, conj)
    }

    fn check_invariants(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Construction(msg));
        let g = &self.group;
        let q = self.q as usize;
        if g.order() != q * (q - 1) / 2 {
            return fail(format!("group order {} differs from q(q-1)/2", g.order()));
        }
        let (s, tau) = self.sigma_tau();
        if self.field.degree() == 1 {
            let m = self.m.0 as i64;
            if g.mul(g.mul(tau, s), g.inv(tau)) != g.pow(s, m) {
                return fail("tau sigma tau^-1 differs from sigma^m".into());
            }
        }
        let (plus, minus) = self.ordered_halves();
        if plus.iter().any(|x| minus.binary_search(x).is_ok()) {
            return fail("the ordered halves S+ and S- meet".into());
        }
        let mut covered = vec![0usize; q * (q - 1) / 2];
        for &(a, b) in &plus {
            covered[pair_index(q, a as usize, b as usize)] += 1;
        }
        if covered.iter().any(|&c| c != 1) {
            return fail("S+ does not meet every vertex exactly once".into());
        }
        let (mut predicted, tt, conj) = self.predicted_subset();
        if tt.iter().any(|x| conj.contains(x)) {
            return fail("T and sigma T sigma^-1 meet".into());
        }
        predicted.dedup();
        if predicted != self.subset {
            return fail("extracted set differs from the predicted union of cosets".into());
        }
        if !self.certification.passed() {
            return fail(format!("certification failed: {:?}", self.certification));
        }
        Ok(())
    }

    /// Words of `S` in the group's labels, in element order.
    pub fn subset_words(&self) -> Vec<String> {
        self.subset.iter().map(|&x| self.group.label(x)).collect()
    }
}
