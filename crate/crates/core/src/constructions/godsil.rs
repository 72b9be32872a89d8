use std::sync::Arc;

use super::hermitian::{build_hermitian_geometry, HermitianGeometry, Point};
use super::Certification;
use crate::cayley::{pds_from_regular_action, Graph, RegularAction};
use crate::finite_field::{FieldElem, Gf};
use crate::group::{group_from_matrices, Matrix, MatrixGroup};
use crate::srg_params::{godsil_params, GodsilParams};
use crate::{Error, Result};

/// Structural facts checked along the way.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GodsilInvariants {
    pub ovoid_size: usize,
    /// Every `⟨g⟩`-orbit of lines has this size `(q + 1)/r`.
    pub line_orbit_size: usize,
    pub orbits_through_p0: usize,
    /// Orbits through `P0` fixed by the group of order `q³`.
    pub fixed_orbits_through_p0: usize,
    pub g_central: bool,
    pub regular_on_ovoid: bool,
    pub exponent: usize,
}

#[derive(Clone, Debug)]
pub struct GodsilConstruction {
    pub q: u64,
    pub r: u64,
    pub geometry: HermitianGeometry,
    /// `γ` of multiplicative order `(q + 1)/r`; `g = diag(γ, 1, 1, 1)`.
    pub gamma: FieldElem,
    /// `⟨g⟩`-orbit id of each line; ids follow the least line of each orbit.
    pub line_orbit: Vec<usize>,
    pub orbits: Vec<Vec<usize>>,
    /// The matrices `t_{α,β}`.
    pub sylow: MatrixGroup,
    /// Least line of the chosen orbit through `P0`.
    pub ell0: usize,
    /// Vertex `i` is the orbit `orbits[vertices[i]]`.
    pub vertices: Vec<usize>,
    pub graph: Graph,
    pub subset: Vec<usize>,
    pub params: GodsilParams<i64>,
    pub invariants: GodsilInvariants,
    pub certification: Certification,
}

fn fail<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Construction(msg.into()))
}

fn t_matrix(f: &Gf, conj: impl Fn(FieldElem) -> FieldElem, a: FieldElem, b: FieldElem) -> Matrix {
    let (o, z) = (FieldElem::ONE, FieldElem::ZERO);
    Matrix::from_rows(&[
        vec![o, z, z, z],
        vec![z, o, f.neg(conj(b)), a],
        vec![z, z, o, b],
        vec![z, z, z, o],
    ])
    .expect("square")
}

/// The construction for `1 < r < q + 1`, `r | q + 1`, with every structural
/// step verified.
pub fn godsil_pds(q: u64, r: u64) -> Result<GodsilConstruction> {
    let params: GodsilParams<i64> = godsil_params(q, r)?;
    if r < 2 {
        return Err(Error::InvalidParams("r = 1 gives the complete graph".into()));
    }
    let geo = build_hermitian_geometry(q)?;
    let sf = &geo.field;
    let f = &sf.field;
    let n = ((q + 1) / r) as usize;
    let gamma = f.element_of_order(n as u64)?;
    if !f.mul(gamma, sf.conj(gamma)).eq(&FieldElem::ONE) {
        return fail("gamma does not preserve the form");
    }
    let apply_point = |m: &dyn Fn(&Point) -> Point, p: usize| -> usize {
        geo.point_index(&m(&geo.points[p])).expect("collineation preserves isotropy")
    };
    let g_point = |x: &Point| -> Point { [f.mul(gamma, x[0]), x[1], x[2], x[3]] };
    if geo.ovoid.iter().any(|&o| apply_point(&g_point, o) != o) {
        return fail("g moves an ovoid point");
    }

    // ⟨g⟩-orbits of lines.
    let g_line: Vec<usize> = (0..geo.lines.len())
        .map(|l| geo.map_line(l, |p| apply_point(&g_point, p)))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Construction("g does not map lines to lines".into()))?;
    let mut line_orbit = vec![usize::MAX; geo.lines.len()];
    let mut orbits: Vec<Vec<usize>> = Vec::new();
    for l in 0..geo.lines.len() {
        if line_orbit[l] != usize::MAX {
            continue;
        }
        let mut orbit = vec![l];
        let mut x = g_line[l];
        while x != l {
            orbit.push(x);
            x = g_line[x];
        }
        orbit.sort_unstable();
        for &m in &orbit {
            line_orbit[m] = orbits.len();
        }
        orbits.push(orbit);
    }
    if let Some(o) = orbits.iter().find(|o| o.len() != n) {
        return fail(format!("a line orbit of g has size {}, expected {n}", o.len()));
    }
    let mut through_p0: Vec<usize> = geo.lines_of_point[geo.p0].iter().map(|&l| line_orbit[l]).collect();
    through_p0.sort_unstable();
    through_p0.dedup();
    if through_p0.len() != r as usize {
        return fail(format!("{} orbits through P0, expected {r}", through_p0.len()));
    }

    // The group of order q³, generated greedily by the t_{α,β}.
    let field = Arc::new(f.clone());
    let conj = |x| sf.conj(x);
    let all_t: Vec<Matrix> = sf.hermitian_trace_zero_pairs().into_iter().map(|(a, b)| t_matrix(f, conj, a, b)).collect();
    let mut gens: Vec<Matrix> = Vec::new();
    let mut sylow = group_from_matrices(field.clone(), &[Matrix::identity(4)])?;
    for t in &all_t {
        if sylow.index_of(t).is_none() {
            gens.push(t.clone());
            sylow = group_from_matrices(field.clone(), &gens)?;
        }
    }
    let order = (q * q * q) as usize;
    if sylow.group.order() != order || all_t.iter().any(|t| sylow.index_of(t).is_none()) {
        return fail(format!("the t matrices generate a group of order {}", sylow.group.order()));
    }
    let g_matrix = Matrix::from_rows(&[
        vec![gamma, FieldElem::ZERO, FieldElem::ZERO, FieldElem::ZERO],
        vec![FieldElem::ZERO, FieldElem::ONE, FieldElem::ZERO, FieldElem::ZERO],
        vec![FieldElem::ZERO, FieldElem::ZERO, FieldElem::ONE, FieldElem::ZERO],
        vec![FieldElem::ZERO, FieldElem::ZERO, FieldElem::ZERO, FieldElem::ONE],
    ])?;
    let g_central = sylow.matrices.iter().all(|t| t.mul(f, &g_matrix) == g_matrix.mul(f, t));
    if !g_central {
        return fail("g does not commute with the t matrices");
    }
    let t_point = |t: usize, p: usize| -> usize {
        let y = sylow.matrices[t].apply(f, &geo.points[p]);
        geo.point_index(&[y[0], y[1], y[2], y[3]]).expect("collineation preserves isotropy")
    };
    if (0..order).any(|t| t_point(t, geo.p0) != geo.p0) {
        return fail("the group moves P0");
    }
    let qpt = geo.point_index(&[FieldElem::ZERO, FieldElem::ZERO, FieldElem::ZERO, FieldElem::ONE]).expect("isotropic");
    let mut hit: Vec<usize> = (0..order).map(|t| t_point(t, qpt)).collect();
    hit.sort_unstable();
    let mut rest: Vec<usize> = geo.ovoid.iter().copied().filter(|&o| o != geo.p0).collect();
    rest.sort_unstable();
    let regular_on_ovoid = hit == rest;
    if !regular_on_ovoid {
        return fail("the group is not regular on the ovoid minus P0");
    }
    let exponent = sylow.group.exponent();
    let want_exp = if q.is_multiple_of(2) { 4 } else { crate::arith::prime_power(q).map_or(0, |(p, _)| p as usize) };
    if exponent != want_exp {
        return fail(format!("the group has exponent {exponent}, expected {want_exp}"));
    }

    let line_image = |t: usize, l: usize| geo.map_line(l, |p| t_point(t, p)).expect("collineation");
    let fixed: Vec<usize> = through_p0
        .iter()
        .copied()
        .filter(|&o| {
            let l = orbits[o][0];
            sylow.group.generators().iter().all(|&t| line_orbit[line_image(t, l)] == o)
        })
        .collect();
    // Orbit ids increase with their least line, so the first fixed orbit holds the least line.
    let ell0_orbit = *fixed.first().ok_or_else(|| Error::Construction("no orbit through P0 is fixed".into()))?;
    let ell0 = orbits[ell0_orbit][0];

    // Vertices: orbits of lines off P0 meeting some line of ⟨g⟩ℓ0.
    let mut is_vertex = vec![false; orbits.len()];
    for &m in &orbits[ell0_orbit] {
        for &p in &geo.lines[m] {
            if p == geo.p0 {
                continue;
            }
            for &l in &geo.lines_of_point[p] {
                if !geo.lines[l].contains(&geo.p0) {
                    is_vertex[line_orbit[l]] = true;
                }
            }
        }
    }
    let vertices: Vec<usize> = (0..orbits.len()).filter(|&o| is_vertex[o]).collect();
    if vertices.len() != order {
        return fail(format!("{} vertices, expected q^3 = {order}", vertices.len()));
    }
    let mut vertex_of = vec![usize::MAX; orbits.len()];
    for (i, &o) in vertices.iter().enumerate() {
        vertex_of[o] = i;
    }

    // A ~ B when the least line of A meets some line of B.
    let mut adj = vec![vec![false; order]; order];
    for (a, &o) in vertices.iter().enumerate() {
        for &p in &geo.lines[orbits[o][0]] {
            for &l in &geo.lines_of_point[p] {
                let b = vertex_of[line_orbit[l]];
                if b != usize::MAX && b != a {
                    adj[a][b] = true;
                }
            }
        }
    }
    let mut edges = Vec::new();
    for a in 0..order {
        for b in a + 1..order {
            if adj[a][b] != adj[b][a] {
                return fail("the adjacency relation is not symmetric");
            }
            if adj[a][b] {
                edges.push((a, b));
            }
        }
    }
    let graph = Graph::from_edges(order, edges)?;

    let mut action = Vec::with_capacity(order * order);
    for t in 0..order {
        for &o in &vertices {
            let b = vertex_of[line_orbit[line_image(t, orbits[o][0])]];
            if b == usize::MAX {
                return fail("the group does not preserve the vertex set");
            }
            action.push(b as u32);
        }
    }
    let action = RegularAction::new(&sylow.group, order, action)?;
    let extracted = pds_from_regular_action(&graph, &action, 0)?;
    let certification = Certification::run(&sylow.group, &extracted.subset, &params.params)?;
    if !certification.passed() {
        return fail(format!("certification failed: {certification:?}"));
    }
    let invariants = GodsilInvariants {
        ovoid_size: geo.ovoid.len(),
        line_orbit_size: n,
        orbits_through_p0: through_p0.len(),
        fixed_orbits_through_p0: fixed.len(),
        g_central,
        regular_on_ovoid,
        exponent,
    };
    Ok(GodsilConstruction {
        q,
        r,
        gamma,
        line_orbit,
        orbits,
        sylow,
        ell0,
        vertices,
        graph,
        subset: extracted.subset,
        params,
        invariants,
        certification,
        geometry: geo,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn q3_r2() {
        let c = godsil_pds(3, 2).unwrap();
        assert_eq!(c.subset.len(), 10);
        assert_eq!(c.certification.srg.params(), Some((10, 1, 5)));
        assert_eq!(c.invariants.exponent, 3);
        assert_eq!(c.invariants.ovoid_size, 28);
        assert_eq!(c.invariants.orbits_through_p0, 2);
        assert!(!c.sylow.group.is_abelian());
    }

    #[test]
    fn inadmissible_r() {
        assert!(godsil_pds(2, 1).is_err());
        assert!(godsil_pds(2, 3).is_err());
        assert!(godsil_pds(3, 3).is_err());
    }
}
