//! Compactly supported functions on `hZ^8`.
//!
//! A [`GridFunction`] stores only its nonzero values, keyed by lattice point;
//! everything outside the stored set is exactly zero. Iteration and
//! reductions run in lexicographic point order so floating-point results
//! do not depend on how the function was built.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::octonion::{BasisIndex, Octonion};
use crate::weyl::ModuleElement;

/// Integer lattice coordinates `m = (m_0, ..., m_7)`.
pub type Point = [i64; 8];

pub const DIM: usize = 8;

/// Axis carrying the half-lattice boundary.
pub const NORMAL_AXIS: usize = 7;

pub fn unit_point(axis: BasisIndex) -> Point {
    let mut p = [0; DIM];
    p[axis.idx()] = 1;
    p
}

pub fn offset(p: &Point, axis: BasisIndex, step: i64) -> Point {
    let mut q = *p;
    q[axis.idx()] += step;
    q
}

/// Axis-aligned box of lattice points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LatticeWindow {
    pub origin: Point,
    pub extent: [u32; DIM],
}

impl LatticeWindow {
    pub fn new(origin: Point, extent: [u32; DIM]) -> Result<Self> {
        if extent.contains(&0) {
            return Err(Error::Grid("window extent must be positive on every axis".into()));
        }
        Ok(LatticeWindow { origin, extent })
    }

    /// The cube `[lo, lo + extent)` on every axis.
    pub fn cube(lo: i64, extent: u32) -> Result<Self> {
        LatticeWindow::new([lo; DIM], [extent; DIM])
    }

    pub fn len(&self) -> u64 {
        self.extent.iter().map(|&e| u64::from(e)).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, p: &Point) -> bool {
        (0..DIM).all(|d| p[d] >= self.origin[d] && p[d] < self.origin[d] + i64::from(self.extent[d]))
    }

    /// Points in lexicographic order (axis 0 slowest).
    pub fn points(&self) -> WindowPoints {
        WindowPoints {
            window: *self,
            cursor: Some(self.origin),
        }
    }

    /// The `n`-th point in lexicographic order.
    pub fn point_at(&self, mut n: u64) -> Point {
        let mut p = self.origin;
        for d in (0..DIM).rev() {
            let e = u64::from(self.extent[d]);
            p[d] += (n % e) as i64;
            n /= e;
        }
        p
    }

    pub fn grown(&self, layers: u32) -> LatticeWindow {
        LatticeWindow {
            origin: self.origin.map(|o| o - i64::from(layers)),
            extent: self.extent.map(|e| e + 2 * layers),
        }
    }

    /// Smallest window containing all the given points.
    pub fn bounding<'a, I: IntoIterator<Item = &'a Point>>(points: I) -> Option<LatticeWindow> {
        let mut it = points.into_iter();
        let first = *it.next()?;
        let (mut lo, mut hi) = (first, first);
        for p in it {
            for d in 0..DIM {
                lo[d] = lo[d].min(p[d]);
                hi[d] = hi[d].max(p[d]);
            }
        }
        let mut extent = [0u32; DIM];
        for d in 0..DIM {
            extent[d] = (hi[d] - lo[d] + 1) as u32;
        }
        Some(LatticeWindow { origin: lo, extent })
    }
}

pub struct WindowPoints {
    window: LatticeWindow,
    cursor: Option<Point>,
}

impl Iterator for WindowPoints {
    type Item = Point;

    fn next(&mut self) -> Option<Point> {
        let current = self.cursor?;
        let mut next = current;
        let mut d = DIM;
        self.cursor = loop {
            if d == 0 {
                break None;
            }
            d -= 1;
            next[d] += 1;
            if next[d] < self.window.origin[d] + i64::from(self.window.extent[d]) {
                break Some(next);
            }
            next[d] = self.window.origin[d];
        };
        Some(current)
    }
}

/// Summation domains, distinguished by the normal coordinate `m_7`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Region {
    Whole,
    /// `m_7 >= 1`.
    Upper,
    /// `m_7 <= -1`.
    Lower,
    /// `m_7 == k`.
    Layer(i64),
    /// `m_7 >= k`.
    AtLeast(i64),
    /// `m_7 <= k`.
    AtMost(i64),
}

impl Region {
    pub fn contains(&self, p: &Point) -> bool {
        let m7 = p[NORMAL_AXIS];
        match *self {
            Region::Whole => true,
            Region::Upper => m7 >= 1,
            Region::Lower => m7 <= -1,
            Region::Layer(k) => m7 == k,
            Region::AtLeast(k) => m7 >= k,
            Region::AtMost(k) => m7 <= k,
        }
    }

    pub fn label(&self) -> String {
        match *self {
            Region::Whole => "whole".into(),
            Region::Upper => "upper".into(),
            Region::Lower => "lower".into(),
            Region::Layer(k) => format!("layer({k})"),
            Region::AtLeast(k) => format!("m7>={k}"),
            Region::AtMost(k) => format!("m7<={k}"),
        }
    }
}

/// Values a grid function can carry.
pub trait LatticeValue: Clone + Default + PartialEq + Send + Sync {
    fn is_zero(&self) -> bool;
    /// `self += s * other`.
    fn add_scaled(&mut self, other: &Self, s: f64);
    fn max_abs(&self) -> f64;
}

impl LatticeValue for Octonion {
    fn is_zero(&self) -> bool {
        Octonion::is_zero(self)
    }

    fn add_scaled(&mut self, other: &Self, s: f64) {
        for (a, b) in self.coeff.iter_mut().zip(other.coeff) {
            *a += s * b;
        }
    }

    fn max_abs(&self) -> f64 {
        Octonion::max_abs(self)
    }
}

impl LatticeValue for ModuleElement {
    fn is_zero(&self) -> bool {
        ModuleElement::is_zero(self)
    }

    fn add_scaled(&mut self, other: &Self, s: f64) {
        ModuleElement::add_scaled(self, other, s);
    }

    fn max_abs(&self) -> f64 {
        ModuleElement::max_abs(self)
    }
}

/// A function on `hZ^8` with finite support.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction<V> {
    h: f64,
    values: BTreeMap<Point, V>,
}

impl<V: LatticeValue> GridFunction<V> {
    pub fn zero(h: f64) -> Result<Self> {
        if !(h.is_finite() && h > 0.0) {
            return Err(Error::Grid(format!("mesh width must be positive and finite, got {h}")));
        }
        Ok(GridFunction {
            h,
            values: BTreeMap::new(),
        })
    }

    pub fn from_values<I: IntoIterator<Item = (Point, V)>>(h: f64, values: I) -> Result<Self> {
        let mut f = GridFunction::zero(h)?;
        for (p, v) in values {
            f.accumulate(p, &v, 1.0);
        }
        Ok(f)
    }

    /// Dense values over `window` in lexicographic order.
    pub fn from_window(h: f64, window: &LatticeWindow, values: Vec<V>) -> Result<Self> {
        if values.len() as u64 != window.len() {
            return Err(Error::Grid(format!(
                "window holds {} points but {} values were given",
                window.len(),
                values.len()
            )));
        }
        GridFunction::from_values(h, window.points().zip(values))
    }

    /// The single-point function `value · δ_at`.
    pub fn delta(h: f64, at: Point, value: V) -> Result<Self> {
        GridFunction::from_values(h, [(at, value)])
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn get(&self, p: &Point) -> Option<&V> {
        self.values.get(p)
    }

    /// Value at `p`, zero outside the support.
    pub fn value(&self, p: &Point) -> V {
        self.values.get(p).cloned().unwrap_or_default()
    }

    pub fn set(&mut self, p: Point, v: V) {
        if v.is_zero() {
            self.values.remove(&p);
        } else {
            self.values.insert(p, v);
        }
    }

    /// `f(p) += s * v`.
    pub fn accumulate(&mut self, p: Point, v: &V, s: f64) {
        if s == 0.0 || v.is_zero() {
            return;
        }
        let slot = self.values.entry(p).or_default();
        slot.add_scaled(v, s);
        if slot.is_zero() {
            self.values.remove(&p);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Point, &V)> + '_ {
        self.values.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Point> + '_ {
        self.values.keys()
    }

    pub fn support_len(&self) -> usize {
        self.values.len()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn bounding_window(&self) -> Option<LatticeWindow> {
        LatticeWindow::bounding(self.values.keys())
    }

    pub fn max_abs(&self) -> f64 {
        self.values.values().fold(0.0, |m, v| m.max(v.max_abs()))
    }

    pub fn map<W: LatticeValue>(&self, mut op: impl FnMut(&Point, &V) -> W) -> GridFunction<W> {
        let mut out = GridFunction {
            h: self.h,
            values: BTreeMap::new(),
        };
        for (p, v) in &self.values {
            out.set(*p, op(p, v));
        }
        out
    }

    pub fn try_map<W: LatticeValue>(&self, mut op: impl FnMut(&Point, &V) -> Result<W>) -> Result<GridFunction<W>> {
        let mut out = GridFunction {
            h: self.h,
            values: BTreeMap::new(),
        };
        for (p, v) in &self.values {
            out.set(*p, op(p, v)?);
        }
        Ok(out)
    }

    /// `a * self + b * other`. Mesh widths must agree.
    pub fn combine(&self, a: f64, other: &GridFunction<V>, b: f64) -> Result<GridFunction<V>> {
        self.check_mesh(other)?;
        let mut out = GridFunction {
            h: self.h,
            values: BTreeMap::new(),
        };
        for (p, v) in &self.values {
            out.accumulate(*p, v, a);
        }
        for (p, v) in &other.values {
            out.accumulate(*p, v, b);
        }
        Ok(out)
    }

    pub fn check_mesh<W>(&self, other: &GridFunction<W>) -> Result<()> {
        if self.h != other.h {
            return Err(Error::Grid(format!("mesh widths differ: {} vs {}", self.h, other.h)));
        }
        Ok(())
    }

    /// `g(m) = f(m + dir · e_axis)`.
    pub fn shift(&self, axis: BasisIndex, dir: i64) -> GridFunction<V> {
        self.translate(&offset(&[0; DIM], axis, -dir))
    }

    /// `g(m) = f(m - by)`: the support moves by `by`.
    pub fn translate(&self, by: &Point) -> GridFunction<V> {
        GridFunction {
            h: self.h,
            values: self
                .values
                .iter()
                .map(|(p, v)| {
                    let mut q = *p;
                    for d in 0..DIM {
                        q[d] += by[d];
                    }
                    (q, v.clone())
                })
                .collect(),
        }
    }

    /// Forward difference `(f(m + e_j) - f(m)) / h`.
    pub fn fdiff(&self, axis: BasisIndex) -> GridFunction<V> {
        let inv_h = 1.0 / self.h;
        let mut out = GridFunction {
            h: self.h,
            values: BTreeMap::new(),
        };
        for (p, v) in &self.values {
            out.accumulate(offset(p, axis, -1), v, inv_h);
            out.accumulate(*p, v, -inv_h);
        }
        out
    }

    /// Backward difference `(f(m) - f(m - e_j)) / h`.
    pub fn bdiff(&self, axis: BasisIndex) -> GridFunction<V> {
        let inv_h = 1.0 / self.h;
        let mut out = GridFunction {
            h: self.h,
            values: BTreeMap::new(),
        };
        for (p, v) in &self.values {
            out.accumulate(*p, v, inv_h);
            out.accumulate(offset(p, axis, 1), v, -inv_h);
        }
        out
    }

    pub fn restrict(&self, region: Region) -> GridFunction<V> {
        GridFunction {
            h: self.h,
            values: self
                .values
                .iter()
                .filter(|(p, _)| region.contains(p))
                .map(|(p, v)| (*p, v.clone()))
                .collect(),
        }
    }

    /// `h^8 · Σ_{m ∈ region} F(m)`, summed in lexicographic order.
    pub fn lattice_sum(&self, region: Region) -> V {
        let mut acc = V::default();
        for (p, v) in &self.values {
            if region.contains(p) {
                acc.add_scaled(v, 1.0);
            }
        }
        let mut out = V::default();
        out.add_scaled(&acc, self.h.powi(DIM as i32));
        out
    }
}

/// Union of supports in lexicographic order.
pub fn joint_support<A: LatticeValue, B: LatticeValue>(a: &GridFunction<A>, b: &GridFunction<B>) -> BTreeSet<Point> {
    a.support().chain(b.support()).copied().collect()
}

/// Coefficient sampling for seeded test inputs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Sampler {
    /// Coefficients are integers in `[-amplitude, amplitude]`.
    pub amplitude: i64,
    /// Only the `e_0` coefficient is drawn.
    pub real_only: bool,
}

impl Sampler {
    pub fn new(amplitude: i64) -> Self {
        Sampler {
            amplitude: amplitude.abs(),
            real_only: false,
        }
    }

    pub fn real_only(mut self) -> Self {
        self.real_only = true;
        self
    }

    pub fn octonion(&self, rng: &mut impl Rng) -> Octonion {
        let mut coeff = [0.0; 8];
        let n = if self.real_only { 1 } else { 8 };
        for c in coeff.iter_mut().take(n) {
            *c = rng.random_range(-self.amplitude..=self.amplitude) as f64;
        }
        Octonion::new(coeff)
    }
}

fn rng_for(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Seeded integer-valued function filling every point of `support`.
pub fn random_gridfn(seed: u64, support: &LatticeWindow, amplitude: i64) -> GridFunction<Octonion> {
    random_dense(seed, support, Sampler::new(amplitude), 1.0)
}

pub fn random_dense(seed: u64, support: &LatticeWindow, sampler: Sampler, h: f64) -> GridFunction<Octonion> {
    let mut rng = rng_for(seed);
    let mut f = GridFunction::zero(h).expect("valid mesh width");
    for p in support.points() {
        f.set(p, sampler.octonion(&mut rng));
    }
    f
}

/// Seeded function on `count` distinct points drawn uniformly from `window`.
pub fn random_scattered(
    seed: u64,
    window: &LatticeWindow,
    count: usize,
    sampler: Sampler,
    h: f64,
) -> Result<GridFunction<Octonion>> {
    if count as u64 > window.len() {
        return Err(Error::Grid(format!(
            "cannot place {count} distinct points in a window of {}",
            window.len()
        )));
    }
    let mut rng = rng_for(seed);
    let mut picked = BTreeSet::new();
    let mut order = Vec::with_capacity(count);
    while order.len() < count {
        let p = window.point_at(rng.random_range(0..window.len()));
        if picked.insert(p) {
            order.push(p);
        }
    }
    let mut f = GridFunction::zero(h)?;
    for p in order {
        f.set(p, sampler.octonion(&mut rng));
    }
    Ok(f)
}

/// Seeded pair `(f, g)` with interacting supports: `f` is scattered over
/// `window`, and each point of `g` sits on a point of `f` or one lattice
/// step away from one, clipped to `window`.
pub fn random_overlapping_pair(
    seed: u64,
    window: &LatticeWindow,
    count: usize,
    sampler: Sampler,
    h: f64,
) -> Result<(GridFunction<Octonion>, GridFunction<Octonion>)> {
    let f = random_scattered(seed, window, count, sampler, h)?;
    let anchors: Vec<Point> = f.support().copied().collect();
    let mut rng = rng_for(seed ^ 0x9e37_79b9_7f4a_7c15);
    let mut g = GridFunction::zero(h)?;
    let mut attempts = 0usize;
    while g.support_len() < count && attempts < 64 * count.max(1) {
        attempts += 1;
        let mut p = anchors[rng.random_range(0..anchors.len())];
        let axis = rng.random_range(0..DIM);
        p[axis] += rng.random_range(-1..=1);
        if window.contains(&p) && g.get(&p).is_none() {
            let v = sampler.octonion(&mut rng);
            g.set(p, v);
        }
    }
    Ok((f, g))
}

/// Seeded pair `(f, g)` sharing `columns` random columns along the normal
/// axis; both functions fill every layer of `window` on those columns, so
/// their supports meet across each layer boundary inside the window.
pub fn random_column_pair(
    seed: u64,
    window: &LatticeWindow,
    columns: usize,
    sampler: Sampler,
    h: f64,
) -> Result<(GridFunction<Octonion>, GridFunction<Octonion>)> {
    let mut base = *window;
    base.extent[NORMAL_AXIS] = 1;
    let picks = random_scattered(seed, &base, columns, sampler, h)?;
    let mut rng = rng_for(seed ^ 0x2545_f491_4f6c_dd1d);
    let mut f = GridFunction::zero(h)?;
    let mut g = GridFunction::zero(h)?;
    for c in picks.support() {
        for k in 0..i64::from(window.extent[NORMAL_AXIS]) {
            let mut p = *c;
            p[NORMAL_AXIS] = window.origin[NORMAL_AXIS] + k;
            f.set(p, sampler.octonion(&mut rng));
            g.set(p, sampler.octonion(&mut rng));
        }
    }
    Ok((f, g))
}

/// On-disk form of an octonion-valued grid function: dense values over a
/// window, each value an 8-tuple of coefficients.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridFile {
    pub h: f64,
    pub origin: Point,
    pub extent: [u32; DIM],
    pub values: Vec<[f64; 8]>,
}

/// Windows larger than this are refused when reading grid files.
pub const MAX_FILE_POINTS: u64 = 1_000_000;

impl GridFile {
    pub fn from_grid(f: &GridFunction<Octonion>) -> GridFile {
        let window = f.bounding_window().unwrap_or(LatticeWindow {
            origin: [0; DIM],
            extent: [1; DIM],
        });
        GridFile {
            h: f.h(),
            origin: window.origin,
            extent: window.extent,
            values: window.points().map(|p| f.value(&p).coeff).collect(),
        }
    }

    pub fn to_grid(&self) -> Result<GridFunction<Octonion>> {
        let window = LatticeWindow::new(self.origin, self.extent)?;
        if window.len() > MAX_FILE_POINTS {
            return Err(Error::ResourceGuard(format!(
                "grid window of {} points exceeds {MAX_FILE_POINTS}",
                window.len()
            )));
        }
        GridFunction::from_window(self.h, &window, self.values.iter().map(|&c| Octonion::new(c)).collect())
    }

    pub fn read(path: &std::path::Path) -> Result<GridFunction<Octonion>> {
        let text = std::fs::read_to_string(path)?;
        let file: GridFile = serde_json::from_str(&text)?;
        file.to_grid()
    }

    pub fn write(f: &GridFunction<Octonion>, path: &std::path::Path) -> Result<()> {
        let text = serde_json::to_string_pretty(&GridFile::from_grid(f))?;
        std::fs::write(path, text + "\n")?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ax(k: u8) -> BasisIndex {
        BasisIndex::of(k)
    }

    fn delta() -> GridFunction<Octonion> {
        GridFunction::delta(1.0, [0; DIM], Octonion::ONE).unwrap()
    }

    #[test]
    fn window_enumeration_is_lexicographic() {
        let w = LatticeWindow::new([0, 0, 0, 0, 0, 0, 1, -1], [1, 1, 1, 1, 1, 1, 2, 3]).unwrap();
        let pts: Vec<Point> = w.points().collect();
        assert_eq!(pts.len() as u64, w.len());
        assert!(pts.windows(2).all(|p| p[0] < p[1]));
        for (n, p) in pts.iter().enumerate() {
            assert_eq!(w.point_at(n as u64), *p);
        }
        assert_eq!(LatticeWindow::cube(-1, 3).unwrap().len(), 6561);
        assert!(LatticeWindow::new([0; DIM], [1, 1, 1, 0, 1, 1, 1, 1]).is_err());
    }

    #[test]
    fn regions_partition_the_lattice() {
        for m7 in -3..=3 {
            let p = [0, 0, 0, 0, 0, 0, 0, m7];
            let hits = [Region::Upper, Region::Lower, Region::Layer(0)]
                .iter()
                .filter(|r| r.contains(&p))
                .count();
            assert_eq!(hits, 1);
        }
    }

    #[test]
    fn shift_examples() {
        let z: GridFunction<Octonion> = GridFunction::zero(1.0).unwrap();
        assert!(z.shift(ax(3), 1).is_zero());
        let s = delta().shift(ax(3), 1);
        let mut at = [0; DIM];
        at[3] = -1;
        assert_eq!(s.value(&at), Octonion::ONE);
        assert_eq!(s.support_len(), 1);
        let f = random_gridfn(5, &LatticeWindow::cube(0, 2).unwrap(), 3);
        assert_eq!(f.shift(ax(6), 1).shift(ax(6), -1), f);
    }

    #[test]
    fn difference_examples() {
        let h = 0.5;
        let c = GridFunction::from_window(h, &LatticeWindow::cube(0, 2).unwrap(), vec![Octonion::ONE; 256]).unwrap();
        // constant on the window: differences vanish except across its faces
        let d = c.fdiff(ax(2));
        for (p, v) in d.iter() {
            assert!(
                p[2] == -1 || p[2] == 1,
                "nonzero only across the window faces, got {p:?} {v}"
            );
        }

        let f = GridFunction::delta(h, [0; DIM], Octonion::ONE).unwrap();
        for j in BasisIndex::all() {
            let fd = f.fdiff(j);
            assert_eq!(fd.value(&[0; DIM]), Octonion::scalar(-1.0 / h));
            assert_eq!(fd.value(&offset(&[0; DIM], j, -1)), Octonion::scalar(1.0 / h));
            assert_eq!(fd.support_len(), 2);
        }
    }

    #[test]
    fn ramp_has_unit_slope_inside() {
        // f(m) = m_j h on a segment along axis j
        let h = 0.25;
        let j = ax(4);
        let f = GridFunction::from_values(
            h,
            (-3..=3).map(|k| (offset(&[0; DIM], j, k), Octonion::scalar(k as f64 * h))),
        )
        .unwrap();
        let fd = f.fdiff(j);
        let bd = f.bdiff(j);
        for k in -3..3 {
            assert_eq!(fd.value(&offset(&[0; DIM], j, k)), Octonion::ONE);
        }
        for k in -2..=3 {
            assert_eq!(bd.value(&offset(&[0; DIM], j, k)), Octonion::ONE);
        }
    }

    #[test]
    fn forward_equals_shifted_backward() {
        let f = random_scattered(9, &LatticeWindow::cube(-1, 3).unwrap(), 20, Sampler::new(4), 1.0).unwrap();
        for j in BasisIndex::all() {
            let fd = f.fdiff(j);
            let bd = f.bdiff(j);
            for p in fd.support().chain(bd.support()) {
                assert_eq!(fd.value(p), bd.value(&offset(p, j, 1)));
            }
        }
    }

    #[test]
    fn differences_commute_and_telescope() {
        let f = random_scattered(11, &LatticeWindow::cube(-1, 3).unwrap(), 24, Sampler::new(5), 1.0).unwrap();
        for j in BasisIndex::all() {
            assert!(f.fdiff(j).lattice_sum(Region::Whole).is_zero());
            assert!(f.bdiff(j).lattice_sum(Region::Whole).is_zero());
            for k in BasisIndex::all() {
                assert_eq!(f.fdiff(j).bdiff(k), f.bdiff(k).fdiff(j));
                assert_eq!(f.fdiff(j).fdiff(k), f.fdiff(k).fdiff(j));
            }
        }
    }

    #[test]
    fn lattice_sum_examples() {
        let z: GridFunction<ModuleElement> = GridFunction::zero(1.0).unwrap();
        assert!(z.lattice_sum(Region::Whole).is_zero());
        let g = crate::weyl::SplitGenerator::plus(1);
        let d = GridFunction::delta(1.0, [0; DIM], ModuleElement::gen(g)).unwrap();
        assert_eq!(d.lattice_sum(Region::Whole), ModuleElement::gen(g));

        let f = random_dense(3, &LatticeWindow::cube(-1, 3).unwrap(), Sampler::new(3), 2.0);
        let parts = [Region::Upper, Region::Lower, Region::Layer(0)]
            .iter()
            .fold(Octonion::ZERO, |acc, r| acc + f.lattice_sum(*r));
        assert_eq!(parts, f.lattice_sum(Region::Whole));
        // h^8 scaling
        assert_eq!(
            f.lattice_sum(Region::Whole),
            f.map(|_, v| *v).lattice_sum(Region::Whole)
        );
        let unit = GridFunction::delta(2.0, [0; DIM], Octonion::ONE).unwrap();
        assert_eq!(unit.lattice_sum(Region::Whole), Octonion::scalar(256.0));
    }

    #[test]
    fn lattice_sum_translation_invariance() {
        let f = random_scattered(21, &LatticeWindow::cube(-1, 3).unwrap(), 30, Sampler::new(3), 1.0).unwrap();
        for axis in 0..7u8 {
            let by = offset(&[0; DIM], ax(axis), 5);
            for r in [Region::Whole, Region::Upper, Region::Lower, Region::Layer(0)] {
                assert_eq!(f.translate(&by).lattice_sum(r), f.lattice_sum(r));
            }
        }
    }

    #[test]
    fn random_generation() {
        let w = LatticeWindow::cube(0, 2).unwrap();
        assert_eq!(random_gridfn(1, &w, 3), random_gridfn(1, &w, 3));
        assert_ne!(random_gridfn(1, &w, 3), random_gridfn(2, &w, 3));
        assert!(random_gridfn(1, &w, 0).is_zero());
        let f = random_gridfn(1, &w, 3);
        assert!(f
            .iter()
            .all(|(_, v)| v.coeff.iter().all(|c| c.fract() == 0.0 && c.abs() <= 3.0)));

        let real = random_scattered(4, &w, 10, Sampler::new(3).real_only(), 1.0).unwrap();
        assert!(real.iter().all(|(_, v)| v.is_real()));

        let (f, g) =
            random_overlapping_pair(7, &LatticeWindow::cube(-1, 3).unwrap(), 16, Sampler::new(3), 1.0).unwrap();
        assert_eq!(f.support_len(), 16);
        assert!(g.support_len() > 0);
        for p in g.support() {
            let near = f
                .support()
                .any(|q| (0..DIM).map(|d| (p[d] - q[d]).abs()).sum::<i64>() <= 1);
            assert!(near);
        }
    }

    #[test]
    fn golden_two_point_sample() {
        let w = LatticeWindow::new([0; DIM], [1, 1, 1, 1, 1, 1, 1, 2]).unwrap();
        let f = random_gridfn(1, &w, 3);
        let vals: Vec<[f64; 8]> = w.points().map(|p| f.value(&p).coeff).collect();
        assert_eq!(vals, GOLDEN_SEED1);
    }

    // frozen output of random_gridfn(1, two-point window, 3)
    const GOLDEN_SEED1: [[f64; 8]; 2] = [
        [-1.0, -3.0, 1.0, -2.0, -2.0, 1.0, 0.0, -2.0],
        [3.0, 1.0, 0.0, 1.0, -3.0, -2.0, 0.0, -2.0],
    ];

    #[test]
    fn grid_file_roundtrip() {
        let f = random_scattered(8, &LatticeWindow::cube(-1, 3).unwrap(), 12, Sampler::new(4), 1.0).unwrap();
        let file = GridFile::from_grid(&f);
        let text = serde_json::to_string(&file).unwrap();
        let back: GridFile = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_grid().unwrap(), f);
        let z: GridFunction<Octonion> = GridFunction::zero(1.0).unwrap();
        assert_eq!(GridFile::from_grid(&z).to_grid().unwrap(), z);
    }

    #[test]
    fn grid_file_rejects_bad_input() {
        let bad = GridFile {
            h: 1.0,
            origin: [0; DIM],
            extent: [1; DIM],
            values: vec![],
        };
        assert!(bad.to_grid().is_err());
        let huge = GridFile {
            h: 1.0,
            origin: [0; DIM],
            extent: [10; DIM],
            values: vec![],
        };
        assert!(matches!(huge.to_grid(), Err(Error::ResourceGuard(_))));
        let neg = GridFile {
            h: -1.0,
            origin: [0; DIM],
            extent: [1; DIM],
            values: vec![[0.0; 8]],
        };
        assert!(neg.to_grid().is_err());
    }
}
