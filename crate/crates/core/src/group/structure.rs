use super::FiniteGroup;
use crate::{Error, Result};

/// Conjugacy classes, each sorted, listed in order of their least element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjugacyData {
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    /// `|C_G(x)|` for the members of each class.
    pub centralizer_order: Vec<usize>,
}

impl ConjugacyData {
    pub fn class_size(&self, a: usize) -> usize {
        self.classes[self.class_of[a]].len()
    }
}

/// Basic structural invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Structure {
    pub order: usize,
    pub is_abelian: bool,
    pub center: Vec<usize>,
    pub derived_subgroup: Vec<usize>,
    pub exponent: usize,
}

/// The quotient `G/N` by a normal subgroup.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: FiniteGroup,
    /// `map[g]` is the coset of `g`.
    pub map: Vec<usize>,
    /// Coset representatives: the least element of each coset.
    pub representatives: Vec<usize>,
}

impl FiniteGroup {
    pub fn conjugacy_classes(&self) -> ConjugacyData {
        let n = self.order();
        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for a in 0..n {
            if class_of[a] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let mut class: Vec<usize> = (0..n).map(|g| self.mul(self.mul(self.inv(g), a), g)).collect();
            class.sort_unstable();
            class.dedup();
            for &c in &class {
                class_of[c] = id;
            }
            classes.push(class);
        }
        let centralizer_order = classes
            .iter()
            .map(|c| {
                let x = c[0];
                (0..n).filter(|&g| self.mul(g, x) == self.mul(x, g)).count()
            })
            .collect();
        ConjugacyData { classes, class_of, centralizer_order }
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&z| self.generators().iter().all(|&g| self.mul(z, g) == self.mul(g, z)))
            .collect()
    }

    /// The commutator subgroup, as a sorted element list.
    pub fn derived_subgroup(&self) -> Vec<usize> {
        let n = self.order();
        let mut comms: Vec<usize> = Vec::new();
        let mut seen = vec![false; n];
        for a in 0..n {
            for b in 0..n {
                let c = self.commutator(a, b);
                if !seen[c] {
                    seen[c] = true;
                    comms.push(c);
                }
            }
        }
        self.subgroup_closure(&comms)
    }

    pub fn exponent(&self) -> usize {
        (0..self.order()).fold(1, |acc, a| crate::arith::lcm(acc as u64, self.element_order(a) as u64) as usize)
    }

    pub fn structure(&self) -> Structure {
        Structure {
            order: self.order(),
            is_abelian: self.is_abelian(),
            center: self.center(),
            derived_subgroup: self.derived_subgroup(),
            exponent: self.exponent(),
        }
    }

    /// Whether the sorted element list `h` is a normal subgroup.
    pub fn is_normal_subgroup(&self, h: &[usize]) -> bool {
        let n = self.order();
        let mut member = vec![false; n];
        for &x in h {
            if x >= n {
                return false;
            }
            member[x] = true;
        }
        if !member[0] {
            return false;
        }
        let closed = h.iter().all(|&a| h.iter().all(|&b| member[self.mul(a, b)]));
        closed && h.iter().all(|&x| self.generators().iter().all(|&g| member[self.mul(self.mul(self.inv(g), x), g)]))
    }

    /// `G/N` for a normal subgroup `N` given by its elements.
    pub fn quotient(&self, normal: &[usize]) -> Result<Quotient> {
        if !self.is_normal_subgroup(normal) {
            return Err(Error::Group("not a normal subgroup".into()));
        }
        let n = self.order();
        let mut map = vec![usize::MAX; n];
        let mut representatives = Vec::new();
        for g in 0..n {
            if map[g] != usize::MAX {
                continue;
            }
            let id = representatives.len();
            representatives.push(g);
            for &h in normal {
                map[self.mul(g, h)] = id;
            }
        }
        let table: Vec<Vec<u32>> = representatives
            .iter()
            .map(|&a| representatives.iter().map(|&b| map[self.mul(a, b)] as u32).collect())
            .collect();
        let mut gens: Vec<usize> = self.generators().iter().map(|&g| map[g]).filter(|&c| c != 0).collect();
        gens.dedup();
        let group = FiniteGroup::from_table(table, gens)?;
        Ok(Quotient { group, map, representatives })
    }
}
