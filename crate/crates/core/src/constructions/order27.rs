use super::Certification;
use crate::group::{group_from_pc_presentation, PcGroup, PcPresentation};
use crate::io::{parse_word, WordOrder};
use crate::srg_params::SrgParams;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order27Variant {
    /// `⟨x, y, z⟩` with `z = [x, y]` central, exponent 3.
    Heisenberg,
    /// `C₉ ⋊₄ C₃ = ⟨x, y | x⁹ = y³ = 1, x^y = x⁴⟩` with `x^y = y⁻¹ x y`.
    C9,
}

impl std::str::FromStr for Order27Variant {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "heisenberg" => Ok(Order27Variant::Heisenberg),
            "c9" | "c9_semidirect" => Ok(Order27Variant::C9),
            _ => Err(Error::InvalidParams(format!("unknown variant {s:?} (use heisenberg or c9)"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Order27Construction {
    pub variant: Order27Variant,
    pub pc: PcGroup,
    pub words: Vec<&'static str>,
    pub subset: Vec<usize>,
    pub certification: Certification,
}

const HEISENBERG_SET: [&str; 10] = ["x", "x^2", "x*y", "x*y^2", "z", "y*z", "x^2*y^2*z", "z^2", "y^2*z^2", "x^2*y*z^2"];
const C9_SET: [&str; 10] = ["x^2", "x^3", "x^6", "x^7", "x^2*y", "x^3*y", "x^4*y", "x*y^2", "x^2*y^2", "x^6*y^2"];

impl Order27Variant {
    pub fn presentation(self) -> PcPresentation {
        match self {
            // x⁻¹ y x = y z
            Order27Variant::Heisenberg => PcPresentation::new(vec![3, 3, 3])
                .with_conjugate(1, 0, vec![1, 2])
                .with_labels(vec!["x".into(), "y".into(), "z".into()]),
            // pc generators y, x. With y x y⁻¹ = x⁴ instead the printed set
            // is not inverse-closed.
            Order27Variant::C9 => PcPresentation::new(vec![3, 9])
                .with_conjugate(1, 0, vec![1; 4])
                .with_labels(vec!["y".into(), "x".into()]),
        }
    }

    pub fn words(self) -> [&'static str; 10] {
        match self {
            Order27Variant::Heisenberg => HEISENBERG_SET,
            Order27Variant::C9 => C9_SET,
        }
    }
}

/// One of the two printed `(27, 10, 1, 5)` sets, certified.
pub fn order27_pds(variant: Order27Variant) -> Result<Order27Construction> {
    let mut pc = group_from_pc_presentation(&variant.presentation())?;
    let g = &mut pc.group;
    if variant == Order27Variant::C9 {
        // Label each element as x^a*y^b.
        let (y, x) = (g.generators()[0], g.generators()[1]);
        let mut labels = vec![String::new(); 27];
        for a in 0..9 {
            for b in 0..3 {
                let e = g.mul(g.pow(x, a), g.pow(y, b));
                let xs = match a {
                    0 => None,
                    1 => Some("x".to_string()),
                    _ => Some(format!("x^{a}")),
                };
                let ys = match b {
                    0 => None,
                    1 => Some("y".to_string()),
                    _ => Some(format!("y^{b}")),
                };
                let parts: Vec<String> = xs.into_iter().chain(ys).collect();
                labels[e] = if parts.is_empty() { "1".into() } else { parts.join("*") };
            }
        }
        g.set_labels(labels)?;
    }
    let names = g.generator_names();
    let subset = variant
        .words()
        .iter()
        .map(|w| parse_word(g, &names, w, WordOrder::LeftToRight))
        .collect::<Result<Vec<usize>>>()?;
    let params = SrgParams::from_i64(27, 10, 1, 5);
    let certification = Certification::run(g, &subset, &params)?;
    let mut sorted = subset;
    sorted.sort_unstable();
    Ok(Order27Construction { variant, words: variant.words().to_vec(), subset: sorted, certification, pc })
}
