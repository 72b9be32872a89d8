//! Polycyclic presentations and collection from the left.
//!
//! Generators are `f1, …, fn` (0-based internally). A presentation gives a
//! relative order `oᵢ` per generator, power relations `fᵢ^{oᵢ} = wᵢ` and, for
//! `j > i`, either the commutator `[fⱼ, fᵢ] = fⱼ⁻¹fᵢ⁻¹fⱼfᵢ` or the conjugate
//! `fᵢ⁻¹fⱼfᵢ` as a word in `f_{i+1}, …, fn`. Missing relations are trivial.

use std::collections::{BTreeMap, HashMap};

use super::{bfs, max_order, FiniteGroup};
use crate::{Error, Result};

/// A positive word: generator indices in product order.
pub type PcWord = Vec<usize>;

/// Rewrite budget per product.
pub const COLLECTION_BUDGET: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConjugateRelation {
    /// `[fⱼ, fᵢ] = w`.
    Commutator(PcWord),
    /// `fᵢ⁻¹ fⱼ fᵢ = w`.
    Conjugate(PcWord),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PcPresentation {
    pub relative_orders: Vec<u32>,
    pub power_relations: Vec<PcWord>,
    /// Keyed by `(j, i)` with `j > i`.
    pub conjugate_relations: BTreeMap<(usize, usize), ConjugateRelation>,
    pub labels: Vec<String>,
}

impl PcPresentation {
    /// All relations trivial: the direct product of cyclic groups of the given orders.
    pub fn new(relative_orders: Vec<u32>) -> PcPresentation {
        let n = relative_orders.len();
        PcPresentation {
            relative_orders,
            power_relations: vec![Vec::new(); n],
            conjugate_relations: BTreeMap::new(),
            labels: (1..=n).map(|i| format!("f{i}")).collect(),
        }
    }

    pub fn n_gens(&self) -> usize {
        self.relative_orders.len()
    }

    pub fn with_power(mut self, i: usize, word: PcWord) -> Self {
        self.power_relations[i] = word;
        self
    }

    pub fn with_commutator(mut self, j: usize, i: usize, word: PcWord) -> Self {
        self.conjugate_relations.insert((j, i), ConjugateRelation::Commutator(word));
        self
    }

    pub fn with_conjugate(mut self, j: usize, i: usize, word: PcWord) -> Self {
        self.conjugate_relations.insert((j, i), ConjugateRelation::Conjugate(word));
        self
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        self.labels = labels;
        self
    }

    fn validate(&self) -> Result<()> {
        let n = self.n_gens();
        if self.power_relations.len() != n || self.labels.len() != n {
            return Err(Error::Group("presentation arrays disagree in length".into()));
        }
        if let Some(i) = self.relative_orders.iter().position(|&o| o < 2) {
            return Err(Error::Group(format!("relative order of f{} must be at least 2", i + 1)));
        }
        for (i, w) in self.power_relations.iter().enumerate() {
            if let Some(&bad) = w.iter().find(|&&g| g <= i || g >= n) {
                return Err(Error::Group(format!("power relation of f{} mentions f{}", i + 1, bad + 1)));
            }
        }
        for (&(j, i), rel) in &self.conjugate_relations {
            if !(i < j && j < n) {
                return Err(Error::Group(format!("relation ({}, {}) needs j > i", j + 1, i + 1)));
            }
            let w = match rel {
                ConjugateRelation::Commutator(w) | ConjugateRelation::Conjugate(w) => w,
            };
            if let Some(&bad) = w.iter().find(|&&g| g <= i || g >= n) {
                return Err(Error::Group(format!(
                    "relation ({}, {}) mentions f{}, outside f{}..f{n}",
                    j + 1,
                    i + 1,
                    bad + 1,
                    i + 2
                )));
            }
        }
        Ok(())
    }
}

/// Collection engine with conjugates precomputed as normal-form words.
#[derive(Clone, Debug)]
struct Collector {
    orders: Vec<u32>,
    powers: Vec<PcWord>,
    /// `conj[j][i]` = normal form of `fᵢ⁻¹ fⱼ fᵢ`, for `j > i`.
    conj: Vec<Vec<PcWord>>,
}

impl Collector {
    fn new(pres: &PcPresentation) -> Result<Collector> {
        pres.validate()?;
        let n = pres.n_gens();
        let mut c = Collector {
            orders: pres.relative_orders.clone(),
            powers: pres.power_relations.clone(),
            conj: (0..n).map(|j| (0..j).map(|_| vec![j]).collect()).collect(),
        };
        // Conjugates by fᵢ only involve letters above i, so fill i from the bottom up.
        for i in (0..n).rev() {
            for j in i + 1..n {
                let word = match pres.conjugate_relations.get(&(j, i)) {
                    None => continue,
                    Some(ConjugateRelation::Conjugate(w)) => {
                        let mut x = vec![0; n];
                        c.collect(&mut x, w)?;
                        c.normal_word(&x)
                    }
                    Some(ConjugateRelation::Commutator(w)) => {
                        let mut x = vec![0; n];
                        x[j] = 1;
                        c.collect(&mut x, w)?;
                        c.normal_word(&x)
                    }
                };
                c.conj[j][i] = word;
            }
        }
        Ok(c)
    }

    fn normal_word(&self, x: &[u32]) -> PcWord {
        x.iter()
            .enumerate()
            .flat_map(|(g, &e)| std::iter::repeat_n(g, e as usize))
            .collect()
    }

    /// Multiplies the normal form `x` on the right by `word`, in place.
    fn collect(&self, x: &mut [u32], word: &[usize]) -> Result<()> {
        let mut stack: Vec<usize> = word.iter().rev().copied().collect();
        let mut steps = 0u64;
        let n = x.len();
        while let Some(k) = stack.pop() {
            steps += 1;
            if steps > COLLECTION_BUDGET {
                return Err(Error::Group(format!(
                    "collection exceeded {COLLECTION_BUDGET} rewriting steps (inconsistent presentation?)"
                )));
            }
            let tail_start = k + 1;
            let has_tail = x[tail_start..].iter().any(|&e| e != 0);
            let mut pending: Vec<usize> = Vec::new();
            if has_tail {
                // x = prefix · f_k^{x_k} · T, and T f_k = f_k T^{f_k}.
                for j in tail_start..n {
                    for _ in 0..x[j] {
                        pending.extend_from_slice(&self.conj[j][k]);
                    }
                    x[j] = 0;
                }
            }
            x[k] += 1;
            if x[k] == self.orders[k] {
                x[k] = 0;
                let mut with_power = self.powers[k].clone();
                with_power.extend(pending);
                pending = with_power;
            }
            stack.extend(pending.into_iter().rev());
        }
        Ok(())
    }

    fn product(&self, a: &[u32], b: &[u32]) -> Result<Vec<u32>> {
        let mut x = a.to_vec();
        self.collect(&mut x, &self.normal_word(b))?;
        Ok(x)
    }
}

/// A group built from a polycyclic presentation; element `i` has normal form `exponents[i]`.
#[derive(Clone, Debug)]
pub struct PcGroup {
    pub group: FiniteGroup,
    pub presentation: PcPresentation,
    pub exponents: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl PcGroup {
    pub fn index_of(&self, exponents: &[u32]) -> Option<usize> {
        self.index.get(exponents).copied()
    }

    /// Element index of the pc generator `f_{i+1}`.
    pub fn generator(&self, i: usize) -> usize {
        self.group.generators()[i]
    }
}

/// Enumerates the group of a consistent presentation and tabulates it by collection.
pub fn group_from_pc_presentation(pres: &PcPresentation) -> Result<PcGroup> {
    let collector = Collector::new(pres)?;
    let n = pres.n_gens();
    let expected: u128 = pres.relative_orders.iter().map(|&o| o as u128).product();
    let cap = max_order();
    if expected > cap as u128 {
        return Err(Error::OrderCap { cap });
    }
    let gens: Vec<Vec<u32>> = (0..n)
        .map(|i| {
            let mut e = vec![0; n];
            e[i] = 1;
            e
        })
        .collect();
    let b = bfs(vec![0u32; n], &gens, |x, g| collector.product(x, g), cap)?;
    if b.elements.len() as u128 != expected {
        return Err(Error::Group(format!(
            "presentation enumerates {} elements, relative orders give {expected}",
            b.elements.len()
        )));
    }
    let v = b.elements.len();
    let mut table = vec![vec![0u32; v]; v];
    for (x, row) in table.iter_mut().enumerate() {
        for (y, cell) in row.iter_mut().enumerate() {
            let z = collector.product(&b.elements[x], &b.elements[y])?;
            *cell = *b
                .index
                .get(&z)
                .ok_or_else(|| Error::Group(format!("product {z:?} is not a normal form")))? as u32;
        }
    }
    let generators = gens.iter().map(|g| b.index[g]).collect();
    let mut group = FiniteGroup::from_table(table, generators)
        .map_err(|e| Error::Group(format!("inconsistent presentation: {e}")))?;
    let labels = b
        .elements
        .iter()
        .map(|e| {
            let parts: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| {
                    if x == 1 {
                        pres.labels[i].clone()
                    } else {
                        format!("{}^{x}", pres.labels[i])
                    }
                })
                .collect();
            if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join("*")
            }
        })
        .collect();
    group.set_labels(labels)?;
    Ok(PcGroup { group, presentation: pres.clone(), exponents: b.elements, index: b.index })
}
