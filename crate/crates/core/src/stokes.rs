//! Discrete Stokes identities for the split operators.
//!
//! The density at a lattice point is
//! `[g D^{-+}](m) · f(m) - g(m) · [D^{+-} f](m)`, computed in raw monomial
//! space: the left term produces left-nested triples that are reassociated
//! with a sign flip, the right term nests octonion units onto pairs without
//! a sign. Its lattice sum vanishes over the whole lattice.
//!
//! On a half-lattice the sum reduces to boundary-layer couplings across the
//! normal axis `m_7`. [`telescope_residue`] derives those couplings directly
//! from the point values of `f` and `g` by a change of summation variables,
//! without touching difference operators or the density.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::lattice::{joint_support, offset, GridFunction, Point, Region, DIM, NORMAL_AXIS};
use crate::octonion::{associator, BasisIndex, Octonion};
use crate::operators::{apply_cr, apply_weyl, apply_weyl_right, Direction, WeylVariant};
use crate::weyl::{
    canonicalize, embed_oct, lmul_gen, lmul_oct_into, rmul_oct_into, Composition, ModuleElement, RawMonomial, Sign,
    SplitGenerator,
};

const NORMAL: BasisIndex = BasisIndex::of(NORMAL_AXIS as u8);

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HalfSpace {
    Upper,
    Lower,
}

impl HalfSpace {
    /// Summation domain for the given base layer: `m_7 >= base` (upper) or
    /// `m_7 <= -base` (lower). Base 1 excludes layer 0 from both halves.
    pub fn region(self, base_layer: i64) -> Region {
        match (self, base_layer) {
            (HalfSpace::Upper, 1) => Region::Upper,
            (HalfSpace::Lower, 1) => Region::Lower,
            (HalfSpace::Upper, b) => Region::AtLeast(b),
            (HalfSpace::Lower, b) => Region::AtMost(-b),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            HalfSpace::Upper => "upper",
            HalfSpace::Lower => "lower",
        }
    }
}

/// How the boundary products `e_7^± (g f)` are read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundaryInterpretation {
    /// Multiply `g f` as octonions, then apply `e_7^±` from the left: a
    /// degree-2 element.
    OctonionFirst,
    /// Keep `e_7^±` in the middle slot:
    /// `Σ g_i f_k e_i^t (e_7^± e_k^u)`.
    SlotPreserving,
}

impl BoundaryInterpretation {
    pub const BOTH: [BoundaryInterpretation; 2] = [
        BoundaryInterpretation::OctonionFirst,
        BoundaryInterpretation::SlotPreserving,
    ];

    pub fn label(self) -> &'static str {
        match self {
            BoundaryInterpretation::OctonionFirst => "i1",
            BoundaryInterpretation::SlotPreserving => "i2",
        }
    }
}

fn density_at(
    right_g: &GridFunction<ModuleElement>,
    weyl_f: &GridFunction<ModuleElement>,
    f: &GridFunction<Octonion>,
    g: &GridFunction<Octonion>,
    m: &Point,
) -> ModuleElement {
    let mut out = ModuleElement::zero();
    if let (Some(left), Some(fv)) = (right_g.get(m), f.get(m)) {
        rmul_oct_into(&mut out, left, fv, 1.0).expect("pairs times octonion stay within degree 3");
    }
    if let (Some(gv), Some(right)) = (g.get(m), weyl_f.get(m)) {
        lmul_oct_into(&mut out, gv, right, -1.0).expect("octonion times pairs stays within degree 3");
    }
    out
}

/// The Stokes density on the joint support of `f` and `g`; it vanishes
/// elsewhere.
pub fn stokes_density_grid(f: &GridFunction<Octonion>, g: &GridFunction<Octonion>) -> GridFunction<ModuleElement> {
    let right_g = apply_weyl_right(g, WeylVariant::MinusPlus);
    let weyl_f = apply_weyl(f, WeylVariant::PlusMinus);
    let mut out = GridFunction::zero(f.h()).expect("mesh width already validated");
    for m in joint_support(f, g) {
        out.set(m, density_at(&right_g, &weyl_f, f, g, &m));
    }
    out
}

/// `[g D^{-+}] f - g [D^{+-} f]` at a single point, in raw monomials.
pub fn stokes_density(f: &GridFunction<Octonion>, g: &GridFunction<Octonion>, m: &Point) -> ModuleElement {
    let right_g = apply_weyl_right(g, WeylVariant::MinusPlus);
    let weyl_f = apply_weyl(f, WeylVariant::PlusMinus);
    density_at(&right_g, &weyl_f, f, g, m)
}

/// `h^8 Σ_{m ∈ region}` of the Stokes density.
pub fn stokes_sum(f: &GridFunction<Octonion>, g: &GridFunction<Octonion>, region: Region) -> ModuleElement {
    stokes_density_grid(f, g).lattice_sum(region)
}

/// As [`stokes_sum`], but every pointwise density is canonicalized before
/// it is summed.
pub fn stokes_sum_canonical(f: &GridFunction<Octonion>, g: &GridFunction<Octonion>, region: Region) -> ModuleElement {
    stokes_density_grid(f, g)
        .map(|_, v| canonicalize(v))
        .lattice_sum(region)
}

// Σ_{i,k,t,u} a_i b_k e_i^t (mid e_k^u)
fn add_slot_triples(out: &mut ModuleElement, a: &Octonion, mid: SplitGenerator, b: &Octonion, s: f64) {
    for (i, ai) in a.iter() {
        if ai == 0.0 {
            continue;
        }
        for (k, bk) in b.iter() {
            if bk == 0.0 {
                continue;
            }
            for t in Sign::BOTH {
                for u in Sign::BOTH {
                    out.add_term(
                        RawMonomial::Triple(SplitGenerator::new(i, t), mid, SplitGenerator::new(k, u)),
                        s * ai * bk,
                    );
                }
            }
        }
    }
}

/// Summation-by-parts residue of the Stokes sum over `region`.
///
/// After shifting summation indices, the terms of axis `j` collapse to
/// `Σ_m w_j(m) [g(m) ⊗ f(m + e_j)]` (middle slot `e_j^+`) and
/// `Σ_m w_j(m) [g(m + e_j) ⊗ f(m)]` (middle slot `e_j^-`), with edge weight
/// `w_j(m) = 1_R(m) - 1_R(m + e_j)` and an overall factor `-h^7`. Only edges
/// crossing the region boundary survive.
pub fn telescope_residue_region(
    f: &GridFunction<Octonion>,
    g: &GridFunction<Octonion>,
    region: Region,
) -> ModuleElement {
    let scale = -f.h().powi(DIM as i32 - 1);
    let weight =
        |p: &Point, q: &Point| f64::from(u8::from(region.contains(p))) - f64::from(u8::from(region.contains(q)));
    let mut out = ModuleElement::zero();
    for j in BasisIndex::all() {
        let plus = SplitGenerator::new(j, Sign::Plus);
        let minus = SplitGenerator::new(j, Sign::Minus);
        for (p, gv) in g.iter() {
            let q = offset(p, j, 1);
            let w = weight(p, &q);
            if let (true, Some(fv)) = (w != 0.0, f.get(&q)) {
                add_slot_triples(&mut out, gv, plus, fv, scale * w);
            }
        }
        for (p, fv) in f.iter() {
            let q = offset(p, j, 1);
            let w = weight(p, &q);
            if let (true, Some(gv)) = (w != 0.0, g.get(&q)) {
                add_slot_triples(&mut out, gv, minus, fv, scale * w);
            }
        }
    }
    out
}

/// Residue for a half-lattice with base layer 1.
pub fn telescope_residue(f: &GridFunction<Octonion>, g: &GridFunction<Octonion>, side: HalfSpace) -> ModuleElement {
    telescope_residue_region(f, g, side.region(1))
}

fn boundary_term(
    out: &mut ModuleElement,
    unit: SplitGenerator,
    gv: &Octonion,
    fv: &Octonion,
    interp: BoundaryInterpretation,
    s: f64,
) {
    let term = match interp {
        BoundaryInterpretation::OctonionFirst => {
            lmul_gen(unit, &embed_oct(&gv.product(fv)), Composition::Nested).expect("degree 2")
        }
        BoundaryInterpretation::SlotPreserving => {
            let inner = lmul_gen(unit, &embed_oct(fv), Composition::Nested).expect("degree 2");
            let mut t = ModuleElement::zero();
            lmul_oct_into(&mut t, gv, &inner, 1.0).expect("degree 3");
            t
        }
    };
    out.add_scaled(&term, s);
}

/// Right-hand side of the half-lattice Stokes formula:
///
/// * upper: `Σ_m̲ [e_7^+ (g(m̲,0) f(m̲,1)) + e_7^- (g(m̲,1) f(m̲,0))]`,
/// * lower: `-Σ_m̲ [e_7^+ (g(m̲,-1) f(m̲,0)) + e_7^- (g(m̲,0) f(m̲,-1))]`,
///
/// with the products read under `interp` and scaled by `h^7` (one factor
/// of `h` is absorbed by the difference quotient across the boundary).
pub fn boundary_rhs(
    f: &GridFunction<Octonion>,
    g: &GridFunction<Octonion>,
    side: HalfSpace,
    interp: BoundaryInterpretation,
) -> ModuleElement {
    let (lo, sign) = match side {
        HalfSpace::Upper => (0, 1.0),
        HalfSpace::Lower => (-1, -1.0),
    };
    let hi = lo + 1;
    let scale = sign * f.h().powi(DIM as i32 - 1);
    let plus = SplitGenerator::new(NORMAL, Sign::Plus);
    let minus = SplitGenerator::new(NORMAL, Sign::Minus);
    let mut out = ModuleElement::zero();
    for (p, gv) in g.iter() {
        let m7 = p[NORMAL_AXIS];
        if m7 == lo {
            if let Some(fv) = f.get(&offset(p, NORMAL, 1)) {
                boundary_term(&mut out, plus, gv, fv, interp, scale);
            }
        } else if m7 == hi {
            if let Some(fv) = f.get(&offset(p, NORMAL, -1)) {
                boundary_term(&mut out, minus, gv, fv, interp, scale);
            }
        }
    }
    out
}

/// Discrete analogue of the associator term of the continuous Stokes
/// formula, next to the (vanishing) whole-lattice Stokes sum.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AssociatorProbe {
    /// `h^8 Σ_m Σ_j [e_j, (D g_j)(m), f(m)]`, `g_j` the real components of `g`.
    pub probe: Octonion,
    pub probe_norm: f64,
    /// Largest coefficient of the whole-lattice Stokes sum.
    pub stokes_zero_norm: f64,
}

pub fn associator_probe(f: &GridFunction<Octonion>, g: &GridFunction<Octonion>, dir: Direction) -> AssociatorProbe {
    let mut acc = Octonion::ZERO;
    for j in BasisIndex::all() {
        let gj = g.map(|_, v| Octonion::scalar(v[j]));
        let dgj = apply_cr(&gj, dir, false);
        let ej = Octonion::unit(j);
        for (p, fv) in f.iter() {
            if let Some(d) = dgj.get(p) {
                acc += associator(&ej, d, fv);
            }
        }
    }
    let probe = acc.scale(f.h().powi(DIM as i32));
    AssociatorProbe {
        probe,
        probe_norm: probe.norm(),
        stokes_zero_norm: stokes_sum(f, g, Region::Whole).max_abs(),
    }
}

/// The four-way comparison on a half-lattice.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StokesReport {
    pub side: HalfSpace,
    pub region: String,
    pub base_layer: i64,
    pub h: f64,
    pub lhs: ModuleElement,
    pub telescope: ModuleElement,
    pub rhs_i1: ModuleElement,
    pub rhs_i2: ModuleElement,
    /// Max coefficient of `lhs - telescope`.
    pub residual_telescope: f64,
    /// Max coefficient of `lhs - rhs_i1`.
    pub residual_i1: f64,
    /// Max coefficient of `lhs - rhs_i2`.
    pub residual_i2: f64,
    /// Interpretations whose right-hand side matches `lhs` within tolerance.
    pub matching: Vec<BoundaryInterpretation>,
    pub duration_ms: Option<f64>,
}

/// Residual of `a - b` measured by the largest coefficient.
pub fn residual(a: &ModuleElement, b: &ModuleElement) -> f64 {
    (a.clone() - b.clone()).max_abs()
}

pub fn half_space_report(
    f: &GridFunction<Octonion>,
    g: &GridFunction<Octonion>,
    side: HalfSpace,
    base_layer: i64,
    tolerance: f64,
) -> StokesReport {
    let start = Instant::now();
    let region = side.region(base_layer);
    let lhs = stokes_sum(f, g, region);
    let telescope = telescope_residue_region(f, g, region);
    let rhs_i1 = boundary_rhs(f, g, side, BoundaryInterpretation::OctonionFirst);
    let rhs_i2 = boundary_rhs(f, g, side, BoundaryInterpretation::SlotPreserving);
    let residual_i1 = residual(&lhs, &rhs_i1);
    let residual_i2 = residual(&lhs, &rhs_i2);
    let bound = tolerance * lhs.max_abs().max(1.0);
    let matching = [
        (BoundaryInterpretation::OctonionFirst, residual_i1),
        (BoundaryInterpretation::SlotPreserving, residual_i2),
    ]
    .into_iter()
    .filter(|&(_, r)| r <= bound)
    .map(|(i, _)| i)
    .collect();
    StokesReport {
        side,
        region: region.label(),
        base_layer,
        h: f.h(),
        residual_telescope: residual(&lhs, &telescope),
        lhs,
        telescope,
        rhs_i1,
        rhs_i2,
        residual_i1,
        residual_i2,
        matching,
        duration_ms: Some(start.elapsed().as_secs_f64() * 1e3),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{random_column_pair, random_overlapping_pair, LatticeWindow, Sampler};

    const ORIGIN: Point = [0; DIM];

    fn at7(m7: i64) -> Point {
        let mut p = ORIGIN;
        p[NORMAL_AXIS] = m7;
        p
    }

    fn pair(seed: u64) -> (GridFunction<Octonion>, GridFunction<Octonion>) {
        random_overlapping_pair(seed, &LatticeWindow::cube(-1, 3).unwrap(), 24, Sampler::new(4), 1.0).unwrap()
    }

    fn straddling(seed: u64, lo: i64) -> (GridFunction<Octonion>, GridFunction<Octonion>) {
        let w = LatticeWindow::new([-1, -1, -1, -1, -1, -1, -1, lo], [3, 3, 3, 3, 3, 3, 3, 2]).unwrap();
        random_column_pair(seed, &w, 10, Sampler::new(4), 1.0).unwrap()
    }

    #[test]
    fn zero_inputs() {
        let z = GridFunction::zero(1.0).unwrap();
        assert!(stokes_density(&z, &z, &ORIGIN).is_zero());
        assert!(stokes_sum(&z, &z, Region::Whole).is_zero());
    }

    #[test]
    fn real_constant_g_density_is_generally_nonzero() {
        let g = GridFunction::delta(1.0, ORIGIN, Octonion::ONE).unwrap();
        let (f, _) = pair(3);
        let next = offset(&ORIGIN, BasisIndex::of(1), 1);
        let f = f
            .combine(
                1.0,
                &GridFunction::delta(1.0, next, Octonion::unit(BasisIndex::of(2))).unwrap(),
                1.0,
            )
            .unwrap();
        assert!(!stokes_density(&f, &g, &ORIGIN).is_zero());
        assert!(stokes_sum(&f, &g, Region::Whole).is_zero());
    }

    #[test]
    fn single_point_density() {
        // f = e1 δ_0, g = e2 δ_0: both supports are the origin
        let e1 = Octonion::unit(BasisIndex::of(1));
        let e2 = Octonion::unit(BasisIndex::of(2));
        let f = GridFunction::delta(1.0, ORIGIN, e1).unwrap();
        let g = GridFunction::delta(1.0, ORIGIN, e2).unwrap();
        let d = stokes_density(&f, &g, &ORIGIN);
        // [g D^{-+}](0) = Σ_j e2^t (e_j^+ (+1) + e_j^- (-1)); times f(0) and
        // reassociated: -Σ_j e2^t(e_j^+ e1^u) + Σ_j e2^t(e_j^- e1^u).
        // g(0)[D^{+-} f](0) = Σ_j e2^t(e_j^+ e1^u)(-1) + e2^t(e_j^- e1^u)(+1).
        // The two cancel exactly at the origin.
        assert!(d.is_zero(), "{d}");
        // one step apart along axis 3 the density is a genuine sum of triples
        let f = GridFunction::delta(1.0, offset(&ORIGIN, BasisIndex::of(3), 1), e1).unwrap();
        let d = stokes_density(&f, &g, &ORIGIN);
        let mut expect = ModuleElement::zero();
        add_slot_triples(&mut expect, &e2, SplitGenerator::plus(3), &e1, -1.0);
        assert_eq!(d, expect);
        assert!(d
            .terms()
            .all(|(m, _)| matches!(m, RawMonomial::Triple(a, _, _) if a.axis == BasisIndex::of(2))));
    }

    #[test]
    fn whole_lattice_sum_vanishes() {
        for seed in 0..8 {
            let (f, g) = pair(seed);
            assert!(stokes_sum(&f, &g, Region::Whole).is_zero(), "seed {seed}");
            assert!(stokes_sum_canonical(&f, &g, Region::Whole).is_zero());
            assert!(!stokes_density_grid(&f, &g).is_zero());
        }
    }

    #[test]
    fn separated_supports_give_zero() {
        let (f, _) = pair(1);
        let (g, _) = pair(2);
        let g = g.translate(&offset(&ORIGIN, BasisIndex::of(0), 10));
        for r in [Region::Whole, Region::Upper, Region::Lower, Region::Layer(0)] {
            assert!(stokes_sum(&f, &g, r).is_zero());
        }
    }

    #[test]
    fn support_away_from_boundary() {
        let (f, g) = pair(5);
        let up = offset(&ORIGIN, NORMAL, 4);
        let (f, g) = (f.translate(&up), g.translate(&up));
        assert!(stokes_sum(&f, &g, Region::Upper).is_zero());
        for side in [HalfSpace::Upper, HalfSpace::Lower] {
            assert!(telescope_residue(&f, &g, side).is_zero());
            for i in BoundaryInterpretation::BOTH {
                assert!(boundary_rhs(&f, &g, side, i).is_zero());
            }
            let rep = half_space_report(&f, &g, side, 1, 0.0);
            assert!(rep.lhs.is_zero() && rep.telescope.is_zero() && rep.rhs_i1.is_zero() && rep.rhs_i2.is_zero());
        }
    }

    #[test]
    fn delta_pair_boundary_terms() {
        let f = GridFunction::delta(1.0, at7(1), Octonion::ONE).unwrap();
        let g = GridFunction::delta(1.0, at7(0), Octonion::ONE).unwrap();
        let mut expect = ModuleElement::zero();
        add_slot_triples(
            &mut expect,
            &Octonion::ONE,
            SplitGenerator::plus(7),
            &Octonion::ONE,
            1.0,
        );
        assert_eq!(expect.len(), 4);
        assert_eq!(telescope_residue(&f, &g, HalfSpace::Upper), expect);
        assert_eq!(stokes_sum(&f, &g, Region::Upper), expect);
        assert_eq!(
            boundary_rhs(&f, &g, HalfSpace::Upper, BoundaryInterpretation::SlotPreserving),
            expect
        );
        let i1 = boundary_rhs(&f, &g, HalfSpace::Upper, BoundaryInterpretation::OctonionFirst);
        assert_eq!(
            i1,
            ModuleElement::pair(SplitGenerator::plus(7), SplitGenerator::plus(0))
                + ModuleElement::pair(SplitGenerator::plus(7), SplitGenerator::minus(0))
        );
        assert_ne!(i1, expect);
    }

    #[test]
    fn half_lattice_identities() {
        for seed in 0..6 {
            for (side, lo) in [(HalfSpace::Upper, 0), (HalfSpace::Lower, -1)] {
                let (f, g) = straddling(seed, lo);
                let region = side.region(1);
                let lhs = stokes_sum(&f, &g, region);
                assert_eq!(lhs, telescope_residue(&f, &g, side), "seed {seed} {side:?}");
                assert_eq!(lhs, boundary_rhs(&f, &g, side, BoundaryInterpretation::SlotPreserving));
                assert!(!lhs.is_zero(), "seed {seed} {side:?}");
                let rep = half_space_report(&f, &g, side, 1, 0.0);
                assert_eq!(rep.matching, vec![BoundaryInterpretation::SlotPreserving]);
            }
        }
    }

    #[test]
    fn partition_and_residue_sum() {
        for seed in 0..4 {
            let (f, g) = straddling(seed, -1);
            let parts = stokes_sum(&f, &g, Region::Upper)
                + stokes_sum(&f, &g, Region::Lower)
                + stokes_sum(&f, &g, Region::Layer(0));
            assert_eq!(parts, stokes_sum(&f, &g, Region::Whole));
            let residues = telescope_residue(&f, &g, HalfSpace::Upper)
                + telescope_residue(&f, &g, HalfSpace::Lower)
                + stokes_sum(&f, &g, Region::Layer(0));
            assert!(residues.is_zero());
        }
    }

    #[test]
    fn oracle_matches_on_arbitrary_regions() {
        let (f, g) = pair(12);
        for r in [Region::Layer(0), Region::AtLeast(0), Region::AtMost(0), Region::Whole] {
            assert_eq!(
                stokes_sum(&f, &g, r),
                telescope_residue_region(&f, &g, r),
                "{}",
                r.label()
            );
        }
    }

    #[test]
    fn scaling_with_mesh_width() {
        let (f, g) = straddling(2, 0);
        let h = 0.5;
        let rescale =
            |u: &GridFunction<Octonion>| GridFunction::from_values(h, u.iter().map(|(p, v)| (*p, *v))).unwrap();
        let (fh, gh) = (rescale(&f), rescale(&g));
        let lhs = stokes_sum(&fh, &gh, Region::Upper);
        let tol = 1e-12 * lhs.max_abs().max(1.0);
        assert!(residual(&lhs, &telescope_residue(&fh, &gh, HalfSpace::Upper)) <= tol);
        assert!(
            residual(
                &lhs,
                &boundary_rhs(&fh, &gh, HalfSpace::Upper, BoundaryInterpretation::SlotPreserving)
            ) <= tol
        );
        assert!(stokes_sum(&fh, &gh, Region::Whole).max_abs() <= tol);
    }

    #[test]
    fn base_layer_zero_shifts_the_boundary() {
        let mut mismatched = false;
        for seed in 0..6 {
            let w = LatticeWindow::new([-1, -1, -1, -1, -1, -1, -1, -1], [3, 3, 3, 3, 3, 3, 3, 2]).unwrap();
            let (f, g) = random_overlapping_pair(seed, &w, 24, Sampler::new(4), 1.0).unwrap();
            let rep = half_space_report(&f, &g, HalfSpace::Upper, 0, 0.0);
            assert_eq!(rep.residual_telescope, 0.0);
            mismatched |= rep.residual_i2 > 0.0;
        }
        assert!(mismatched);
    }

    #[test]
    fn probe_examples() {
        let real = Sampler::new(3).real_only();
        let w = LatticeWindow::cube(-1, 3).unwrap();
        let (f, g) = random_overlapping_pair(1, &w, 20, real, 1.0).unwrap();
        let pr = associator_probe(&f, &g, Direction::Forward);
        assert!(pr.probe.is_zero());
        assert_eq!(pr.stokes_zero_norm, 0.0);

        // g = e1 bump, f = e2 bump on overlapping supports
        let bump = |u: u8| {
            GridFunction::from_values(
                1.0,
                [
                    ORIGIN,
                    offset(&ORIGIN, BasisIndex::of(3), 1),
                    offset(&ORIGIN, BasisIndex::of(5), -1),
                ]
                .into_iter()
                .map(|p| (p, Octonion::unit(BasisIndex::of(u)))),
            )
            .unwrap()
        };
        let pr = associator_probe(&bump(2), &bump(1), Direction::Forward);
        assert!(pr.probe_norm > 0.0);
        assert_eq!(pr.stokes_zero_norm, 0.0);

        let (f, _) = pair(1);
        let (g, _) = pair(2);
        let g = g.translate(&offset(&ORIGIN, BasisIndex::of(0), 10));
        let pr = associator_probe(&f, &g, Direction::Backward);
        assert!(pr.probe.is_zero() && pr.stokes_zero_norm == 0.0);
    }

    #[test]
    fn translation_invariance_along_tangential_axes() {
        let (f, g) = straddling(4, 0);
        let base = half_space_report(&f, &g, HalfSpace::Upper, 1, 0.0);
        for axis in 0..7u8 {
            let by = offset(&ORIGIN, BasisIndex::of(axis), -3);
            let rep = half_space_report(&f.translate(&by), &g.translate(&by), HalfSpace::Upper, 1, 0.0);
            assert_eq!(rep.lhs, base.lhs);
            assert_eq!(rep.telescope, base.telescope);
            assert_eq!(rep.rhs_i2, base.rhs_i2);
        }
    }
}
