//! Discrete Cauchy-Riemann operators on `hZ^8`.
//!
//! Classic operators act with octonion units `e_j` (optionally conjugated);
//! Weyl operators act with split units, `e_j^+` paired with one difference
//! direction and `e_j^-` with the other. Every operator grows the support by
//! one lattice step per difference; there are no boundary options.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::lattice::{offset, GridFunction, LatticeValue};
use crate::octonion::{BasisIndex, Octonion};
use crate::weyl::{embed_oct, DenseModule, ModuleElement, RawMonomial, Sign, SplitGenerator};

pub use crate::weyl::Composition;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn opposite(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

pub fn diff<V: LatticeValue>(f: &GridFunction<V>, axis: BasisIndex, dir: Direction) -> GridFunction<V> {
    match dir {
        Direction::Forward => f.fdiff(axis),
        Direction::Backward => f.bdiff(axis),
    }
}

/// The two split Cauchy-Riemann operators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum WeylVariant {
    /// `D^{+-} = Σ_j e_j^+ ∂^{+j} + e_j^- ∂^{-j}`.
    PlusMinus,
    /// `D^{-+} = Σ_j e_j^+ ∂^{-j} + e_j^- ∂^{+j}`.
    MinusPlus,
}

impl WeylVariant {
    pub const BOTH: [WeylVariant; 2] = [WeylVariant::PlusMinus, WeylVariant::MinusPlus];

    /// Difference direction attached to the split unit of the given sign.
    pub fn direction(self, sign: Sign) -> Direction {
        match (self, sign) {
            (WeylVariant::PlusMinus, Sign::Plus) | (WeylVariant::MinusPlus, Sign::Minus) => Direction::Forward,
            (WeylVariant::PlusMinus, Sign::Minus) | (WeylVariant::MinusPlus, Sign::Plus) => Direction::Backward,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            WeylVariant::PlusMinus => "D+-",
            WeylVariant::MinusPlus => "D-+",
        }
    }
}

fn left_unit(j: BasisIndex, conjugated: bool) -> Octonion {
    let u = Octonion::unit(j);
    if conjugated {
        u.conj()
    } else {
        u
    }
}

/// `Σ_j u_j · (∂_j f)` with `u_j = e_j` or its conjugate.
pub fn apply_cr(f: &GridFunction<Octonion>, dir: Direction, conjugated: bool) -> GridFunction<Octonion> {
    let mut out = GridFunction::zero(f.h()).expect("mesh width already validated");
    for j in BasisIndex::all() {
        let u = left_unit(j, conjugated);
        for (p, v) in diff(f, j, dir).iter() {
            out.accumulate(*p, &u.product(v), 1.0);
        }
    }
    out
}

/// Star-Laplacian `Σ_j (f(m+e_j) - 2 f(m) + f(m-e_j)) / h^2`.
pub fn apply_laplacian<V: LatticeValue>(f: &GridFunction<V>) -> GridFunction<V> {
    let w = 1.0 / (f.h() * f.h());
    let mut out = GridFunction::zero(f.h()).expect("mesh width already validated");
    for (p, v) in f.iter() {
        out.accumulate(*p, v, -2.0 * 8.0 * w);
        for j in BasisIndex::all() {
            out.accumulate(offset(p, j, 1), v, w);
            out.accumulate(offset(p, j, -1), v, w);
        }
    }
    out
}

/// `D^{outer}` applied to `conj(D^{inner}) f`, either sequentially
/// (`Nested`, reducing to an octonion after each operator) or as
/// `Σ_{j,k} (e_j conj(e_k)) ∂^{outer,j} ∂^{inner,k} f` (`Flat`).
pub fn classic_composition(
    f: &GridFunction<Octonion>,
    outer: Direction,
    inner: Direction,
    convention: Composition,
) -> GridFunction<Octonion> {
    match convention {
        Composition::Nested => apply_cr(&apply_cr(f, inner, true), outer, false),
        Composition::Flat => {
            let mut out = GridFunction::zero(f.h()).expect("mesh width already validated");
            for k in BasisIndex::all() {
                let dk = diff(f, k, inner);
                for j in BasisIndex::all() {
                    let unit = Octonion::unit(j).product(&left_unit(k, true));
                    for (p, v) in diff(&dk, j, outer).iter() {
                        out.accumulate(*p, &unit.product(v), 1.0);
                    }
                }
            }
            out
        }
    }
}

/// `½ (D^+ conj(D^-) f + D^- conj(D^+) f)` under the given convention.
pub fn classic_factorization(f: &GridFunction<Octonion>, convention: Composition) -> GridFunction<Octonion> {
    let a = classic_composition(f, Direction::Forward, Direction::Backward, convention);
    let b = classic_composition(f, Direction::Backward, Direction::Forward, convention);
    a.combine(0.5, &b, 0.5).expect("same mesh")
}

/// `½ (D^+ conj(D^-) + D^- conj(D^+)) f - Δ_h f`, by sequential application.
pub fn classic_factorization_residual(f: &GridFunction<Octonion>) -> GridFunction<Octonion> {
    classic_factorization(f, Composition::Nested)
        .combine(1.0, &apply_laplacian(f), -1.0)
        .expect("same mesh")
}

/// A Weyl operator acting on a module-valued function; the operator unit
/// multiplies each value from the left under `convention`.
pub fn apply_weyl_module(
    f: &GridFunction<ModuleElement>,
    variant: WeylVariant,
    convention: Composition,
) -> Result<GridFunction<ModuleElement>> {
    let inv_h = 1.0 / f.h();
    let mut targets = BTreeSet::new();
    for p in f.support() {
        targets.insert(*p);
        for j in BasisIndex::all() {
            targets.insert(offset(p, j, 1));
            targets.insert(offset(p, j, -1));
        }
    }
    // gather each output value in a dense scratch buffer
    let mut scratch = DenseModule::new();
    let mut out = GridFunction::zero(f.h())?;
    for q in targets {
        for j in BasisIndex::all() {
            for sign in Sign::BOTH {
                let unit = SplitGenerator::new(j, sign);
                let (ahead, behind) = match variant.direction(sign) {
                    Direction::Forward => (offset(&q, j, 1), q),
                    Direction::Backward => (q, offset(&q, j, -1)),
                };
                if let Some(v) = f.get(&ahead) {
                    scratch.lmul_gen_add(unit, v, inv_h, convention)?;
                }
                if let Some(v) = f.get(&behind) {
                    scratch.lmul_gen_add(unit, v, -inv_h, convention)?;
                }
            }
        }
        out.set(q, scratch.take());
    }
    Ok(out)
}

/// `D f` for an octonion-valued `f`: raw pairs `(e_j^± e_k^±)` with the
/// operator unit first.
pub fn apply_weyl(f: &GridFunction<Octonion>, variant: WeylVariant) -> GridFunction<ModuleElement> {
    apply_weyl_module(&f.map(|_, v| embed_oct(v)), variant, Composition::Nested)
        .expect("degree-1 input cannot overflow")
}

/// The right action `[g D]`: raw pairs with `g`'s unit in the first slot and
/// the operator unit in the second.
pub fn apply_weyl_right(g: &GridFunction<Octonion>, variant: WeylVariant) -> GridFunction<ModuleElement> {
    let mut out = GridFunction::zero(g.h()).expect("mesh width already validated");
    for j in BasisIndex::all() {
        for sign in Sign::BOTH {
            let unit = SplitGenerator::new(j, sign);
            for (p, v) in diff(g, j, variant.direction(sign)).iter() {
                let mut term = ModuleElement::zero();
                for (i, gi) in v.iter() {
                    for t in Sign::BOTH {
                        term.add_term(RawMonomial::Pair(SplitGenerator::new(i, t), unit), gi);
                    }
                }
                out.accumulate(*p, &term, 1.0);
            }
        }
    }
    out
}

/// `D(D f)`, the second application under `convention`.
pub fn weyl_square(
    f: &GridFunction<Octonion>,
    variant: WeylVariant,
    convention: Composition,
) -> Result<GridFunction<ModuleElement>> {
    apply_weyl_module(&apply_weyl(f, variant), variant, convention)
}

/// `D(D f) + embed(Δ_h f)`; identically zero under the flat convention.
pub fn weyl_square_residual(
    f: &GridFunction<Octonion>,
    variant: WeylVariant,
    convention: Composition,
) -> Result<GridFunction<ModuleElement>> {
    let square = weyl_square(f, variant, convention)?;
    let lap = apply_laplacian(f).map(|_, v| embed_oct(v));
    square.combine(1.0, &lap, 1.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::{random_dense, random_scattered, LatticeWindow, Point, Sampler, DIM};

    const ORIGIN: Point = [0; DIM];

    fn delta(h: f64) -> GridFunction<Octonion> {
        GridFunction::delta(h, ORIGIN, Octonion::ONE).unwrap()
    }

    fn constant_slab() -> GridFunction<Octonion> {
        random_dense(2, &LatticeWindow::cube(0, 2).unwrap(), Sampler::new(3), 1.0)
    }

    fn battery(seed: u64) -> GridFunction<Octonion> {
        random_scattered(seed, &LatticeWindow::cube(-1, 3).unwrap(), 32, Sampler::new(5), 1.0).unwrap()
    }

    // Pointwise evaluation straight from the difference formulas, no grid
    // machinery: Σ_j u_j (f(m ± e_j) - f(m)) / h.
    fn cr_oracle(f: &GridFunction<Octonion>, m: &Point, dir: Direction, conjugated: bool) -> Octonion {
        let mut acc = Octonion::ZERO;
        for j in BasisIndex::all() {
            let d = match dir {
                Direction::Forward => f.value(&offset(m, j, 1)) - f.value(m),
                Direction::Backward => f.value(m) - f.value(&offset(m, j, -1)),
            };
            acc += left_unit(j, conjugated).product(&d.scale(1.0 / f.h()));
        }
        acc
    }

    #[test]
    fn cr_on_delta() {
        let h = 0.5;
        let f = delta(h);
        let fwd = apply_cr(&f, Direction::Forward, false);
        let sum_units = BasisIndex::all().fold(Octonion::ZERO, |a, j| a + Octonion::unit(j));
        assert_eq!(fwd.value(&ORIGIN), sum_units.scale(-1.0 / h));
        let bwd_conj = apply_cr(&f, Direction::Backward, true);
        assert_eq!(bwd_conj.value(&ORIGIN), sum_units.conj().scale(1.0 / h));
        for dir in [Direction::Forward, Direction::Backward] {
            for conj in [false, true] {
                let out = apply_cr(&f, dir, conj);
                let window = LatticeWindow::cube(-1, 3).unwrap();
                for p in window.points() {
                    assert_eq!(out.value(&p), cr_oracle(&f, &p, dir, conj));
                }
            }
        }
    }

    #[test]
    fn cr_matches_oracle_on_random_input() {
        let f = battery(3);
        for dir in [Direction::Forward, Direction::Backward] {
            for conj in [false, true] {
                let out = apply_cr(&f, dir, conj);
                for p in out.support() {
                    assert_eq!(out.value(p), cr_oracle(&f, p, dir, conj));
                }
            }
        }
    }

    #[test]
    fn cr_forward_backward_relation() {
        // ∂^{+j} - ∂^{-j} = h ∂^{+j} ∂^{-j}
        let h = 0.5;
        let f = battery(4).map(|_, v| *v);
        let f = GridFunction::from_values(h, f.iter().map(|(p, v)| (*p, *v))).unwrap();
        let lhs = apply_cr(&f, Direction::Forward, false).combine(1.0, &apply_cr(&f, Direction::Backward, false), -1.0);
        let mut rhs = GridFunction::zero(h).unwrap();
        for j in BasisIndex::all() {
            for (p, v) in f.bdiff(j).fdiff(j).iter() {
                rhs.accumulate(*p, &Octonion::unit(j).product(v), h);
            }
        }
        let lhs = lhs.unwrap();
        assert!(lhs.combine(1.0, &rhs, -1.0).unwrap().max_abs() < 1e-12);
    }

    #[test]
    fn constants_are_annihilated_inside() {
        // a window-filling profile is constant at interior points
        let f = constant_slab();
        let c = f.value(&ORIGIN);
        let g = GridFunction::from_window(1.0, &LatticeWindow::cube(-1, 3).unwrap(), vec![c; 6561]).unwrap();
        let centre = [0; DIM];
        assert!(apply_cr(&g, Direction::Forward, false).value(&centre).is_zero());
        assert!(apply_laplacian(&g).value(&centre).is_zero());
        assert!(apply_weyl(&g, WeylVariant::PlusMinus).value(&centre).is_zero());
    }

    #[test]
    fn laplacian_examples() {
        let h = 0.5;
        let lap = apply_laplacian(&delta(h));
        assert_eq!(lap.value(&ORIGIN), Octonion::scalar(-16.0 / (h * h)));
        assert_eq!(lap.support_len(), 17);
        // a ramp along axis 2 has zero second difference along that axis
        let ax = BasisIndex::of(2);
        let ramp = GridFunction::from_values(
            1.0,
            (-4..=4).map(|k| (offset(&ORIGIN, ax, k), Octonion::scalar(k as f64))),
        )
        .unwrap();
        let second = ramp.bdiff(ax).fdiff(ax);
        for k in -3..=3 {
            assert!(second.value(&offset(&ORIGIN, ax, k)).is_zero());
        }
        // off-axis it sees -2k from the zero neighbours
        assert_eq!(
            apply_laplacian(&ramp).value(&offset(&ORIGIN, ax, 2)),
            Octonion::scalar(-28.0)
        );
        // Σ_j ∂^{+j}∂^{-j}
        let f = battery(5);
        let mut composed = GridFunction::zero(1.0).unwrap();
        for j in BasisIndex::all() {
            composed = composed.combine(1.0, &f.bdiff(j).fdiff(j), 1.0).unwrap();
        }
        assert_eq!(apply_laplacian(&f), composed);
    }

    #[test]
    fn classic_factorization_holds() {
        assert!(classic_factorization_residual(&delta(1.0)).is_zero());
        for seed in 0..5 {
            assert!(classic_factorization_residual(&battery(seed)).is_zero(), "seed {seed}");
        }
        let f = battery(9);
        let f = GridFunction::from_values(0.3, f.iter().map(|(p, v)| (*p, *v))).unwrap();
        let r = classic_factorization_residual(&f);
        assert!(r.max_abs() <= 1e-12 * apply_laplacian(&f).max_abs());
    }

    #[test]
    fn classic_nested_and_flat_agree_after_symmetrization() {
        for seed in 0..5 {
            let f = battery(seed);
            assert_eq!(
                classic_factorization(&f, Composition::Nested),
                classic_factorization(&f, Composition::Flat)
            );
        }
    }

    #[test]
    fn classic_single_product_depends_on_convention() {
        // D^+ conj(D^-) alone is not associativity-blind: the associators
        // [e_j, conj(e_k), ∂^{+j}∂^{-k} f] only cancel in the symmetric sum.
        let differs = (0..5).any(|seed| {
            let f = battery(seed);
            classic_composition(&f, Direction::Forward, Direction::Backward, Composition::Nested)
                != classic_composition(&f, Direction::Forward, Direction::Backward, Composition::Flat)
        });
        assert!(differs);
    }

    #[test]
    fn weyl_on_delta() {
        let h = 0.5;
        let out = apply_weyl(&delta(h), WeylVariant::PlusMinus);
        let mut expect = ModuleElement::zero();
        for j in 0..8u8 {
            for t in Sign::BOTH {
                let e0 = SplitGenerator::new(BasisIndex::REAL, t);
                expect.add_term(RawMonomial::Pair(SplitGenerator::plus(j), e0), -1.0 / h);
                expect.add_term(RawMonomial::Pair(SplitGenerator::minus(j), e0), 1.0 / h);
            }
        }
        assert_eq!(out.value(&ORIGIN), expect);
        assert!(apply_weyl(&delta(1.0), WeylVariant::MinusPlus).value(&ORIGIN).degree() == Some(2));
    }

    #[test]
    fn weyl_is_linear() {
        let (f, g) = (battery(1), battery(2));
        for v in WeylVariant::BOTH {
            let lhs = apply_weyl(&f.combine(2.0, &g, -3.0).unwrap(), v);
            let rhs = apply_weyl(&f, v).combine(2.0, &apply_weyl(&g, v), -3.0).unwrap();
            assert_eq!(lhs, rhs);
            let lhs = apply_weyl_right(&f.combine(2.0, &g, -3.0).unwrap(), v);
            let rhs = apply_weyl_right(&f, v)
                .combine(2.0, &apply_weyl_right(&g, v), -3.0)
                .unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn weyl_right_on_delta() {
        let e1 = Octonion::unit(BasisIndex::of(1));
        let g = GridFunction::delta(1.0, ORIGIN, e1).unwrap();
        let out = apply_weyl_right(&g, WeylVariant::MinusPlus);
        // at the origin: ∂^{-j} g = +e1 pairs with e_j^+, ∂^{+j} g = -e1 with e_j^-
        let mut expect = ModuleElement::zero();
        for j in 0..8u8 {
            for t in Sign::BOTH {
                let lead = SplitGenerator::new(BasisIndex::of(1), t);
                expect.add_term(RawMonomial::Pair(lead, SplitGenerator::plus(j)), 1.0);
                expect.add_term(RawMonomial::Pair(lead, SplitGenerator::minus(j)), -1.0);
            }
        }
        assert_eq!(out.value(&ORIGIN), expect);
        // real-valued g: leading slot is e_0^±
        let r = apply_weyl_right(&delta(1.0), WeylVariant::MinusPlus);
        for (_, v) in r.iter() {
            for (m, _) in v.terms() {
                match m {
                    RawMonomial::Pair(a, _) => assert_eq!(a.axis, BasisIndex::REAL),
                    other => panic!("unexpected {other}"),
                }
            }
        }
    }

    #[test]
    fn weyl_square_flat_is_minus_laplacian() {
        for v in WeylVariant::BOTH {
            assert!(weyl_square_residual(&delta(1.0), v, Composition::Flat)
                .unwrap()
                .is_zero());
            for seed in 0..3 {
                let f = battery(seed);
                let sq = weyl_square(&f, v, Composition::Flat).unwrap();
                assert!(sq.iter().all(|(_, e)| e.of_degree(3).is_zero()));
                assert!(weyl_square_residual(&f, v, Composition::Flat).unwrap().is_zero());
            }
        }
    }

    #[test]
    fn weyl_square_nested_does_not_factor() {
        for v in WeylVariant::BOTH {
            let r = weyl_square_residual(&delta(1.0), v, Composition::Nested).unwrap();
            assert!(!r.is_zero());
            assert!(r.iter().any(|(_, e)| !e.of_degree(3).is_zero()));
        }
    }
}
