//! The class function `Φ(x) = |Cl(x) ∩ S|·|C_G(x)|` and the congruence
//! `Φ(x) ≡ μ − θ₂(θ₁ + 1) (mod √Δ)` it satisfies on nonidentity classes.

use std::fmt;

use crate::group::FiniteGroup;
use crate::group_ring::PdsCandidate;
use crate::scalar::residue;
use crate::srg_params::SrgParams;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiRow {
    /// Least element of the class.
    pub representative: usize,
    pub class_size: usize,
    pub centralizer_order: usize,
    pub meet: usize,
    pub phi: i64,
    pub phi_residue: i64,
}

/// One row per nonidentity conjugacy class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PhiReport {
    pub params: SrgParams<i64>,
    pub sqrt_delta: i64,
    /// `μ − θ₂(θ₁ + 1)`.
    pub target: i64,
    /// `target mod √Δ`, in `[0, √Δ)`.
    pub residue_target: i64,
    pub rows: Vec<PhiRow>,
    pub all_pass: bool,
}

impl PhiReport {
    pub fn failing_rows(&self) -> impl Iterator<Item = &PhiRow> {
        self.rows.iter().filter(move |r| r.phi_residue != self.residue_target)
    }

    /// The table with representatives written as group labels.
    pub fn render(&self, g: &FiniteGroup) -> String {
        let mut out = String::new();
        self.write_table(&mut out, |x| g.label(x)).expect("writing to a String");
        out
    }

    fn write_table(&self, f: &mut impl fmt::Write, label: impl Fn(usize) -> String) -> fmt::Result {
        writeln!(
            f,
            "params {}  sqrt(delta) {}  target {} = {} mod {}",
            self.params, self.sqrt_delta, self.target, self.residue_target, self.sqrt_delta
        )?;
        writeln!(f, "{:>12} {:>6} {:>6} {:>5} {:>8} {:>6}", "rep", "|Cl|", "|C|", "meet", "phi", "mod")?;
        for r in &self.rows {
            writeln!(
                f,
                "{:>12} {:>6} {:>6} {:>5} {:>8} {:>6}{}",
                label(r.representative),
                r.class_size,
                r.centralizer_order,
                r.meet,
                r.phi,
                r.phi_residue,
                if r.phi_residue == self.residue_target { "" } else { "  FAIL" }
            )?;
        }
        Ok(())
    }
}

impl fmt::Display for PhiReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write_table(f, |x| x.to_string())
    }
}

fn type2_target(p: &SrgParams<i64>) -> Result<(i64, i64, i64)> {
    let r = p.class_residues()?;
    Ok((r.sqrt_delta, r.pds_value, r.pds_residue))
}

/// The per-class table for a subset already certified as a PDS with
/// parameters `p`; certification is not repeated here.
pub fn phi_report(c: &PdsCandidate<'_>, p: &SrgParams<i64>) -> Result<PhiReport> {
    let g = c.group;
    if p.v != g.order() as i64 || p.k != c.k() as i64 {
        return Err(Error::InvalidParams(format!("{p} does not match a {}-subset of a group of order {}", c.k(), g.order())));
    }
    let (sqrt_delta, target, residue_target) = type2_target(p)?;
    let member = c.indicator();
    let cc = g.conjugacy_classes();
    let rows: Vec<PhiRow> = cc
        .classes
        .iter()
        .zip(&cc.centralizer_order)
        .filter(|(cl, _)| cl[0] != 0)
        .map(|(cl, &z)| {
            let meet = cl.iter().filter(|&&x| member[x]).count();
            let phi = (meet * z) as i64;
            PhiRow {
                representative: cl[0],
                class_size: cl.len(),
                centralizer_order: z,
                meet,
                phi,
                phi_residue: residue(&phi, &sqrt_delta),
            }
        })
        .collect();
    let all_pass = rows.iter().all(|r| r.phi_residue == residue_target);
    Ok(PhiReport { params: p.clone(), sqrt_delta, target, residue_target, rows, all_pass })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassMeet {
    pub holds: bool,
    /// Representatives of nonidentity classes disjoint from `S`.
    pub empty_classes: Vec<usize>,
}

/// Every nonidentity class meets `S`, as forced when `√Δ ∤ μ − θ₂(θ₁ + 1)`.
pub fn class_meet_nonempty(c: &PdsCandidate<'_>, p: &SrgParams<i64>) -> Result<ClassMeet> {
    let (sqrt_delta, target, residue_target) = type2_target(p)?;
    if residue_target == 0 {
        return Err(Error::Inapplicable(format!("sqrt(delta) = {sqrt_delta} divides {target}")));
    }
    let member = c.indicator();
    let cc = c.group.conjugacy_classes();
    let empty_classes: Vec<usize> =
        cc.classes.iter().filter(|cl| cl[0] != 0 && !cl.iter().any(|&x| member[x])).map(|cl| cl[0]).collect();
    Ok(ClassMeet { holds: empty_classes.is_empty(), empty_classes })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CenterVerdict {
    /// Both residues are nonzero and the group has a nontrivial center.
    Impossible { center_order: usize },
    Inapplicable(String),
}

/// A group with nontrivial center carries no PDS when `√Δ` divides neither
/// `μ − θ₂(θ₁ + 1)` nor `v − 2k + λ − θ₂(θ₁ + 1)`.
pub fn center_obstruction(g: &FiniteGroup, p: &SrgParams<i64>) -> Result<CenterVerdict> {
    if p.v != g.order() as i64 {
        return Err(Error::InvalidParams(format!("{p} does not match a group of order {}", g.order())));
    }
    let r = p.class_residues()?;
    if !r.no_nontrivial_center() {
        return Ok(CenterVerdict::Inapplicable(format!(
            "residues {} and {} mod {}: one vanishes",
            r.pds_residue, r.complement_residue, r.sqrt_delta
        )));
    }
    let center_order = g.center().len();
    if center_order == 1 {
        return Ok(CenterVerdict::Inapplicable("the center is trivial".into()));
    }
    Ok(CenterVerdict::Impossible { center_order })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{order27_pds, triangular_pds, Order27Variant};
    use crate::group::{group_from_pc_presentation, group_from_permutations, PcPresentation, Perm};

    #[test]
    fn t7_profile() {
        let c = triangular_pds(7).unwrap();
        let cand = PdsCandidate::new(&c.group, &c.subset).unwrap();
        let rep = phi_report(&cand, &c.certification.params).unwrap();
        assert_eq!(rep.target, 12);
        assert_eq!(rep.residue_target, 2);
        assert!(rep.all_pass);
        let mut sizes: Vec<(usize, usize)> = rep.rows.iter().map(|r| (r.class_size, r.meet)).collect();
        sizes.sort();
        assert_eq!(sizes, [(3, 1), (3, 1), (7, 4), (7, 4)]);
        assert_eq!(rep.rows.iter().map(|r| r.meet).sum::<usize>(), 10);
        assert!(class_meet_nonempty(&cand, &c.certification.params).unwrap().holds);
        let text = rep.render(&c.group);
        assert!(text.contains("sqrt(delta) 5"));
        assert!(text.lines().nth(2).unwrap().trim_start().starts_with(char::is_alphabetic));
    }

    #[test]
    fn c9_congruence() {
        let c = order27_pds(Order27Variant::C9).unwrap();
        let cand = PdsCandidate::new(&c.pc.group, &c.subset).unwrap();
        let rep = phi_report(&cand, &c.certification.params).unwrap();
        assert_eq!(rep.residue_target, 3);
        assert!(rep.all_pass);
        assert!(rep.rows.iter().all(|r| r.meet >= 1));
    }

    #[test]
    fn abelian_reduction() {
        // The 3x3 rook graph, (9,4,1,2), in Z3 x Z3: sqrt(delta) = 3 divides 6.
        let g = group_from_pc_presentation(&PcPresentation::new(vec![3, 3])).unwrap().group;
        let (a, b) = (g.generators()[0], g.generators()[1]);
        let s = [a, g.inv(a), b, g.inv(b)];
        let cand = PdsCandidate::new(&g, &s).unwrap();
        let p = SrgParams::from_i64(9, 4, 1, 2);
        assert!(matches!(class_meet_nonempty(&cand, &p), Err(Error::Inapplicable(_))));
        let rep = phi_report(&cand, &p).unwrap();
        assert_eq!(rep.residue_target, 0);
        assert!(rep.all_pass);
        assert!(rep.rows.iter().all(|r| r.phi == 9 * r.meet as i64));
        assert_eq!(rep.failing_rows().count(), 0);
    }

    #[test]
    fn mismatched_params() {
        let c = triangular_pds(7).unwrap();
        let cand = PdsCandidate::new(&c.group, &c.subset).unwrap();
        assert!(phi_report(&cand, &SrgParams::from_i64(27, 10, 1, 5)).is_err());
    }

    #[test]
    fn center_verdicts() {
        // (27,10,1,5): residues 3 and 0 mod 6.
        let h = order27_pds(Order27Variant::Heisenberg).unwrap();
        let p = SrgParams::from_i64(27, 10, 1, 5);
        assert!(matches!(center_obstruction(&h.pc.group, &p).unwrap(), CenterVerdict::Inapplicable(_)));
        // (21,10,5,4): residues 2 and 4 mod 5.
        let t7 = SrgParams::from_i64(21, 10, 5, 4);
        let z21 = group_from_pc_presentation(&PcPresentation::new(vec![3, 7])).unwrap().group;
        assert_eq!(center_obstruction(&z21, &t7).unwrap(), CenterVerdict::Impossible { center_order: 21 });
        let c = triangular_pds(7).unwrap();
        assert!(matches!(center_obstruction(&c.group, &t7).unwrap(), CenterVerdict::Inapplicable(_)));
        let s3 = group_from_permutations(&[Perm(vec![1, 0, 2]), Perm(vec![1, 2, 0])]).unwrap();
        assert!(center_obstruction(&s3.group, &t7).is_err());
        assert!(center_obstruction(&z21, &SrgParams::from_i64(13, 6, 2, 3)).is_err());
    }
}
