//! Finite groups as explicit multiplication tables.
//!
//! Every constructor funnels into [`FiniteGroup`]: elements are the indices
//! `0..order`, index 0 is the identity, and the remaining indices follow
//! breadth-first discovery order from the generators (each element is
//! multiplied on the right by the generators in input order).

mod matrix;
mod pc;
mod perm;
mod structure;

use std::collections::HashMap;
use std::hash::Hash;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

pub use matrix::{group_from_matrices, Matrix, MatrixGroup};
pub use pc::{group_from_pc_presentation, ConjugateRelation, PcGroup, PcPresentation, PcWord};
pub use perm::{group_from_permutations, semidirect_cp_ct, Perm, PermGroup};
pub use structure::{ConjugacyData, Quotient, Structure};

pub(crate) use perm::affine_word;

/// Default cap on the number of elements a closure may enumerate.
pub const DEFAULT_MAX_ORDER: usize = 1_000_000;

/// The closure cap, overridable through `PDSLAB_MAX_ORDER`.
pub fn max_order() -> usize {
    std::env::var("PDSLAB_MAX_ORDER")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_ORDER)
}

/// A finite group given by its full multiplication table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mul: Vec<u32>,
    inv: Vec<u32>,
    generators: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl FiniteGroup {
    /// Validates a row-major table (`table[a][b] = a·b`) with identity 0.
    ///
    /// Checks the Latin-square property, the identity, and associativity on
    /// every triple `(a, b, g)` with `g` a generator, which implies full
    /// associativity once the generators are known to generate.
    pub fn from_table(table: Vec<Vec<u32>>, generators: Vec<usize>) -> Result<FiniteGroup> {
        let order = table.len();
        if order == 0 {
            return Err(Error::Group("empty table".into()));
        }
        let mut mul = Vec::with_capacity(order * order);
        for (i, row) in table.into_iter().enumerate() {
            if row.len() != order {
                return Err(Error::Group(format!("row {i} has {} entries, expected {order}", row.len())));
            }
            mul.extend(row);
        }
        let g = Self::from_flat(order, mul, generators)?;
        g.check_latin()?;
        g.check_generated()?;
        g.check_associative_on_generators()?;
        Ok(g)
    }

    fn from_flat(order: usize, mul: Vec<u32>, generators: Vec<usize>) -> Result<FiniteGroup> {
        if let Some(&bad) = generators.iter().find(|&&x| x >= order) {
            return Err(Error::Group(format!("generator index {bad} out of range")));
        }
        for a in 0..order {
            if mul[a] as usize != a || mul[a * order] as usize != a {
                return Err(Error::Group(format!("index 0 is not an identity (row/column {a})")));
            }
        }
        let mut inv = vec![u32::MAX; order];
        for a in 0..order {
            if let Some(b) = (0..order).find(|&b| mul[a * order + b] == 0) {
                inv[a] = b as u32;
            } else {
                return Err(Error::Group(format!("element {a} has no inverse")));
            }
        }
        Ok(FiniteGroup { order, mul, inv, generators, labels: None })
    }

    /// Builds the table from the right-multiplication-by-generator table of
    /// a concrete (hence associative) group enumerated in BFS order.
    fn from_bfs(order: usize, right: &[Vec<u32>], parent: &[(u32, u32)], generators: Vec<usize>) -> Result<FiniteGroup> {
        let mut mul = vec![0u32; order * order];
        for x in 0..order {
            mul[x * order] = x as u32;
            for y in 1..order {
                let (py, gi) = parent[y];
                let xp = mul[x * order + py as usize];
                mul[x * order + y] = right[xp as usize][gi as usize];
            }
        }
        let g = Self::from_flat(order, mul, generators)?;
        g.spot_check_associativity(10_000, 0x5eed)?;
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn set_labels(&mut self, labels: Vec<String>) -> Result<()> {
        if labels.len() != self.order {
            return Err(Error::Group(format!("{} labels for a group of order {}", labels.len(), self.order)));
        }
        self.labels = Some(labels);
        Ok(())
    }

    /// Display name of an element: its label if present, else `#index`.
    pub fn label(&self, a: usize) -> String {
        match &self.labels {
            Some(l) => l[a].clone(),
            None => format!("#{a}"),
        }
    }

    /// Row `a` of the table.
    pub fn row(&self, a: usize) -> &[u32] {
        &self.mul[a * self.order..(a + 1) * self.order]
    }

    /// `a^m` for any integer `m`.
    pub fn pow(&self, a: usize, m: i64) -> usize {
        let base = if m < 0 { self.inv(a) } else { a };
        let e = m.unsigned_abs() % self.element_order(a) as u64;
        let mut acc = 0;
        for _ in 0..e {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    /// Generators commute pairwise (they always generate the whole group).
    pub fn is_abelian(&self) -> bool {
        let gens = &self.generators;
        gens.iter().all(|&a| gens.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// `a⁻¹b⁻¹ab`.
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    /// Sorted element set of the subgroup generated by `gens`.
    pub fn subgroup_closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        let mut out = vec![0];
        seen[0] = true;
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out.sort_unstable();
        out
    }

    fn check_latin(&self) -> Result<()> {
        let n = self.order;
        let mut seen = vec![0u32; n];
        for a in 0..n {
            let stamp = a as u32 + 1;
            for b in 0..n {
                let x = self.mul[a * n + b] as usize;
                if x >= n {
                    return Err(Error::Group(format!("entry ({a},{b}) = {x} out of range")));
                }
                if seen[x] == stamp {
                    return Err(Error::Group(format!("row {a} repeats {x} (column {b})")));
                }
                seen[x] = stamp;
            }
        }
        seen.iter_mut().for_each(|s| *s = 0);
        for b in 0..n {
            let stamp = b as u32 + 1;
            for a in 0..n {
                let x = self.mul[a * n + b] as usize;
                if seen[x] == stamp {
                    return Err(Error::Group(format!("column {b} repeats {x} (row {a})")));
                }
                seen[x] = stamp;
            }
        }
        Ok(())
    }

    fn check_generated(&self) -> Result<()> {
        let sub = self.subgroup_closure(&self.generators);
        if sub.len() != self.order {
            return Err(Error::Group(format!(
                "generators span {} of {} elements",
                sub.len(),
                self.order
            )));
        }
        Ok(())
    }

    fn check_associative_on_generators(&self) -> Result<()> {
        for &g in &self.generators {
            for a in 0..self.order {
                for b in 0..self.order {
                    if self.mul(self.mul(a, b), g) != self.mul(a, self.mul(b, g)) {
                        return Err(Error::Group(format!("associativity fails at ({a},{b},{g})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// Checks `(ab)c = a(bc)` on `samples` random triples.
    pub fn spot_check_associativity(&self, samples: usize, seed: u64) -> Result<()> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let (a, b, c) = (
                rng.gen_range(0..self.order),
                rng.gen_range(0..self.order),
                rng.gen_range(0..self.order),
            );
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                return Err(Error::Group(format!("associativity fails at ({a},{b},{c})")));
            }
        }
        Ok(())
    }

    /// Display names of the generators: their labels when present, else `g1, g2, …`.
    pub fn generator_names(&self) -> Vec<String> {
        match &self.labels {
            Some(l) => self.generators.iter().map(|&g| l[g].clone()).collect(),
            None => (1..=self.generators.len()).map(|i| format!("g{i}")).collect(),
        }
    }

    /// A shortest word for every element over the generators, `a*b^2*c` style.
    pub fn words(&self, names: &[String]) -> Vec<String> {
        let n = self.order;
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (gi, &g) in self.generators.iter().enumerate() {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = Some((x, gi));
                    queue.push_back(y);
                }
            }
        }
        (0..n)
            .map(|mut x| {
                let mut letters = Vec::new();
                while let Some((p, gi)) = parent[x] {
                    letters.push(gi);
                    x = p;
                }
                letters.reverse();
                render_word(&letters, names)
            })
            .collect()
    }

    /// The table as rows of indices.
    pub fn table_rows(&self) -> impl Iterator<Item = &[u32]> {
        self.mul.chunks(self.order)
    }
}

/// Renders a letter sequence with runs collapsed into powers; empty is `1`.
pub(crate) fn render_word(letters: &[usize], names: &[String]) -> String {
    let mut parts: Vec<String> = Vec::new();
    let mut i = 0;
    while i < letters.len() {
        let mut j = i;
        while j < letters.len() && letters[j] == letters[i] {
            j += 1;
        }
        let name = &names[letters[i]];
        parts.push(if j - i == 1 { name.clone() } else { format!("{name}^{}", j - i) });
        i = j;
    }
    if parts.is_empty() {
        "1".into()
    } else {
        parts.join("*")
    }
}

/// Result of a breadth-first closure over concrete elements.
pub(crate) struct Closure<E> {
    pub elements: Vec<E>,
    pub index: HashMap<E, usize>,
    pub group: FiniteGroup,
}

/// Breadth-first enumeration without building the table.
pub(crate) struct Bfs<E> {
    pub elements: Vec<E>,
    pub index: HashMap<E, usize>,
    /// `right[x][g]` = index of `x · gens[g]`.
    pub right: Vec<Vec<u32>>,
    /// `(parent, generator)` with `elements[y] = elements[parent] · gens[generator]`.
    pub parent: Vec<(u32, u32)>,
}

/// Enumerates `⟨gens⟩` starting from `identity`, multiplying discovered
/// elements on the right by each generator in order.
pub(crate) fn bfs<E, F>(identity: E, gens: &[E], mut mul: F, cap: usize) -> Result<Bfs<E>>
where
    E: Clone + Eq + Hash,
    F: FnMut(&E, &E) -> Result<E>,
{
    let mut elements = vec![identity.clone()];
    let mut index = HashMap::new();
    index.insert(identity, 0usize);
    let mut right: Vec<Vec<u32>> = Vec::new();
    let mut parent = vec![(0u32, 0u32)];
    let mut i = 0;
    while i < elements.len() {
        let mut row = Vec::with_capacity(gens.len());
        for (gi, g) in gens.iter().enumerate() {
            let y = mul(&elements[i], g)?;
            let next = elements.len();
            let id = *index.entry(y.clone()).or_insert(next);
            if id == next {
                if next >= cap {
                    return Err(Error::OrderCap { cap });
                }
                elements.push(y);
                parent.push((i as u32, gi as u32));
            }
            row.push(id as u32);
        }
        right.push(row);
        i += 1;
    }
    Ok(Bfs { elements, index, right, parent })
}

pub(crate) fn closure<E, F>(identity: E, gens: &[E], mul: F, cap: usize) -> Result<Closure<E>>
where
    E: Clone + Eq + Hash,
    F: Fn(&E, &E) -> E,
{
    let b = bfs(identity, gens, |x, y| Ok(mul(x, y)), cap)?;
    let generators = gens.iter().map(|g| b.index[g]).collect();
    let group = FiniteGroup::from_bfs(b.elements.len(), &b.right, &b.parent, generators)?;
    Ok(Closure { elements: b.elements, index: b.index, group })
}
