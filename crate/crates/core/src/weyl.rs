//! The split (Weyl) algebra generated by `e_k^+`, `e_k^-` for `k = 0..7`.
//!
//! Products are kept as formal monomials of degree at most 3. Degree-3
//! monomials are always right-nested, `a(bc)`; a left-nested `(ab)c` is
//! converted on entry with the anti-associativity rule `(ab)c = -a(bc)`.
//!
//! Two rewriting layers exist:
//! * raw: monomials as written, with reassociation as the only rule;
//! * canonical: additionally every pair `bc` (a `Pair` key or the inner
//!   pair of a `Triple`) is reordered with the anticommutation relations
//!   `e_j^+ e_k^+ + e_k^+ e_j^+ = 0`, `e_j^- e_k^- + e_k^- e_j^- = 0` and
//!   `e_j^+ e_k^- + e_k^- e_j^+ = -δ_jk`. The leading slot of a triple is
//!   never commuted across the nesting.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use serde::de::{self, MapAccess, Visitor};
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::octonion::{BasisIndex, Octonion};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// A split unit `e_axis^sign`. The derived order compares the axis first,
/// then the sign with `Plus < Minus`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SplitGenerator {
    pub axis: BasisIndex,
    pub sign: Sign,
}

impl SplitGenerator {
    pub const fn new(axis: BasisIndex, sign: Sign) -> Self {
        SplitGenerator { axis, sign }
    }

    fn slot(self) -> usize {
        2 * self.axis.idx() + usize::from(self.sign == Sign::Minus)
    }

    fn from_slot(n: usize) -> Self {
        let sign = if n.is_multiple_of(2) { Sign::Plus } else { Sign::Minus };
        SplitGenerator::new(BasisIndex::of((n / 2) as u8), sign)
    }

    pub fn plus(axis: u8) -> Self {
        SplitGenerator::new(BasisIndex::of(axis), Sign::Plus)
    }

    pub fn minus(axis: u8) -> Self {
        SplitGenerator::new(BasisIndex::of(axis), Sign::Minus)
    }

    /// All 16 generators in canonical order.
    pub fn all() -> impl Iterator<Item = SplitGenerator> + Clone {
        BasisIndex::all().flat_map(|axis| Sign::BOTH.into_iter().map(move |sign| SplitGenerator { axis, sign }))
    }
}

impl fmt::Display for SplitGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}{}", self.axis.get(), self.sign.symbol())
    }
}

/// Canonical generator order used by the normal forms.
pub fn gen_order(a: SplitGenerator, b: SplitGenerator) -> Ordering {
    a.cmp(&b)
}

/// Number of monomials of degree at most 3: `1 + 16 + 16^2 + 16^3`.
pub const MONOMIAL_SLOTS: usize = 4369;

/// A formal product of split generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RawMonomial {
    Unit,
    Gen(SplitGenerator),
    /// `b c` as written.
    Pair(SplitGenerator, SplitGenerator),
    /// The right-nested product `a (b c)`.
    Triple(SplitGenerator, SplitGenerator, SplitGenerator),
}

impl RawMonomial {
    pub fn degree(&self) -> usize {
        match self {
            RawMonomial::Unit => 0,
            RawMonomial::Gen(_) => 1,
            RawMonomial::Pair(..) => 2,
            RawMonomial::Triple(..) => 3,
        }
    }

    /// Position in the dense enumeration of all monomials of degree at most
    /// 3; increasing in the monomial order.
    pub fn slot(&self) -> usize {
        match *self {
            RawMonomial::Unit => 0,
            RawMonomial::Gen(a) => 1 + a.slot(),
            RawMonomial::Pair(a, b) => 17 + 16 * a.slot() + b.slot(),
            RawMonomial::Triple(a, b, c) => 273 + 256 * a.slot() + 16 * b.slot() + c.slot(),
        }
    }

    pub fn from_slot(n: usize) -> Option<RawMonomial> {
        let g = SplitGenerator::from_slot;
        Some(match n {
            0 => RawMonomial::Unit,
            1..=16 => RawMonomial::Gen(g(n - 1)),
            17..=272 => RawMonomial::Pair(g((n - 17) / 16), g((n - 17) % 16)),
            273..MONOMIAL_SLOTS => {
                let k = n - 273;
                RawMonomial::Triple(g(k / 256), g(k / 16 % 16), g(k % 16))
            }
            _ => return None,
        })
    }

    /// True if no pair in the monomial is out of canonical order or squared.
    pub fn is_canonical(&self) -> bool {
        match *self {
            RawMonomial::Unit | RawMonomial::Gen(_) => true,
            RawMonomial::Pair(b, c) | RawMonomial::Triple(_, b, c) => b < c,
        }
    }
}

impl fmt::Display for RawMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RawMonomial::Unit => write!(f, "1"),
            RawMonomial::Gen(g) => write!(f, "{g}"),
            RawMonomial::Pair(b, c) => write!(f, "({b} {c})"),
            RawMonomial::Triple(a, b, c) => write!(f, "{a}({b} {c})"),
        }
    }
}

struct MonoParser<'a> {
    src: &'a str,
    rest: &'a str,
}

impl<'a> MonoParser<'a> {
    fn fail<T>(&self, reason: &'static str) -> Result<T> {
        Err(Error::ParseMonomial {
            input: self.src.to_string(),
            reason,
        })
    }

    fn skip_ws(&mut self) {
        self.rest = self.rest.trim_start();
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if let Some(r) = self.rest.strip_prefix(c) {
            self.rest = r;
            true
        } else {
            false
        }
    }

    fn generator(&mut self) -> Result<SplitGenerator> {
        self.skip_ws();
        let mut chars = self.rest.chars();
        if chars.next() != Some('e') {
            return self.fail("expected `e`");
        }
        let axis = match chars.next().and_then(|c| c.to_digit(10)) {
            Some(d) if d < 8 => BasisIndex::of(d as u8),
            _ => return self.fail("expected axis digit 0..7"),
        };
        let sign = match chars.next() {
            Some('+') => Sign::Plus,
            Some('-') => Sign::Minus,
            _ => return self.fail("expected `+` or `-` after axis"),
        };
        self.rest = chars.as_str();
        Ok(SplitGenerator { axis, sign })
    }

    fn inner_pair(&mut self) -> Result<(SplitGenerator, SplitGenerator)> {
        let b = self.generator()?;
        let c = self.generator()?;
        if !self.eat(')') {
            return self.fail("expected `)`");
        }
        Ok((b, c))
    }

    fn monomial(&mut self) -> Result<RawMonomial> {
        let mono = if self.eat('1') {
            RawMonomial::Unit
        } else if self.eat('(') {
            let (b, c) = self.inner_pair()?;
            RawMonomial::Pair(b, c)
        } else {
            let a = self.generator()?;
            if self.eat('(') {
                let (b, c) = self.inner_pair()?;
                RawMonomial::Triple(a, b, c)
            } else {
                RawMonomial::Gen(a)
            }
        };
        self.skip_ws();
        if !self.rest.is_empty() {
            return self.fail("trailing input");
        }
        Ok(mono)
    }
}

impl FromStr for RawMonomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        MonoParser { src: s, rest: s }.monomial()
    }
}

/// Multiplication convention for a generator acting on a pair `bc`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Composition {
    /// `a·(bc)` is stored as the triple `a(bc)`.
    Nested,
    /// `a·(bc)` is read as `(ab)c`: the leading pair is reduced with the
    /// anticommutation relations, then reassociated.
    Flat,
}

/// Finite real combination of raw monomials. Zero coefficients are never
/// stored.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct ModuleElement {
    terms: BTreeMap<RawMonomial, f64>,
}

impl ModuleElement {
    pub fn zero() -> Self {
        ModuleElement::default()
    }

    pub fn unit() -> Self {
        ModuleElement::term(RawMonomial::Unit, 1.0)
    }

    pub fn gen(g: SplitGenerator) -> Self {
        ModuleElement::term(RawMonomial::Gen(g), 1.0)
    }

    pub fn pair(b: SplitGenerator, c: SplitGenerator) -> Self {
        ModuleElement::term(RawMonomial::Pair(b, c), 1.0)
    }

    pub fn triple(a: SplitGenerator, b: SplitGenerator, c: SplitGenerator) -> Self {
        ModuleElement::term(RawMonomial::Triple(a, b, c), 1.0)
    }

    pub fn term(mono: RawMonomial, coeff: f64) -> Self {
        let mut e = ModuleElement::zero();
        e.add_term(mono, coeff);
        e
    }

    pub fn from_terms<I: IntoIterator<Item = (RawMonomial, f64)>>(terms: I) -> Self {
        let mut e = ModuleElement::zero();
        for (m, c) in terms {
            e.add_term(m, c);
        }
        e
    }

    pub fn add_term(&mut self, mono: RawMonomial, coeff: f64) {
        if coeff == 0.0 {
            return;
        }
        let slot = self.terms.entry(mono).or_insert(0.0);
        *slot += coeff;
        if *slot == 0.0 {
            self.terms.remove(&mono);
        }
    }

    /// `self += s * other`.
    pub fn add_scaled(&mut self, other: &ModuleElement, s: f64) {
        if s == 0.0 {
            return;
        }
        for (&m, &c) in &other.terms {
            self.add_term(m, c * s);
        }
    }

    pub fn scale(&self, s: f64) -> ModuleElement {
        let mut out = ModuleElement::zero();
        out.add_scaled(self, s);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mono: &RawMonomial) -> f64 {
        self.terms.get(mono).copied().unwrap_or(0.0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&RawMonomial, f64)> + '_ {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    /// Highest degree present; `None` for zero.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().map(RawMonomial::degree).max()
    }

    /// The homogeneous component of the given degree.
    pub fn of_degree(&self, degree: usize) -> ModuleElement {
        ModuleElement {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == degree)
                .map(|(&m, &c)| (m, c))
                .collect(),
        }
    }

    /// Largest absolute coefficient.
    pub fn max_abs(&self) -> f64 {
        self.terms.values().fold(0.0, |m, c| m.max(c.abs()))
    }
}

impl Add for ModuleElement {
    type Output = ModuleElement;
    fn add(mut self, rhs: ModuleElement) -> ModuleElement {
        self.add_scaled(&rhs, 1.0);
        self
    }
}

impl AddAssign<&ModuleElement> for ModuleElement {
    fn add_assign(&mut self, rhs: &ModuleElement) {
        self.add_scaled(rhs, 1.0);
    }
}

impl Sub for ModuleElement {
    type Output = ModuleElement;
    fn sub(mut self, rhs: ModuleElement) -> ModuleElement {
        self.add_scaled(&rhs, -1.0);
        self
    }
}

impl SubAssign<&ModuleElement> for ModuleElement {
    fn sub_assign(&mut self, rhs: &ModuleElement) {
        self.add_scaled(rhs, -1.0);
    }
}

impl Neg for ModuleElement {
    type Output = ModuleElement;
    fn neg(self) -> ModuleElement {
        self.scale(-1.0)
    }
}

impl fmt::Display for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (m, &c)) in self.terms.iter().enumerate() {
            match (n, c < 0.0) {
                (0, _) => write!(f, "{c}*{m}")?,
                (_, true) => write!(f, " - {}*{m}", -c)?,
                (_, false) => write!(f, " + {c}*{m}")?,
            }
        }
        Ok(())
    }
}

// Serialized as a JSON object `{ "<monomial>": coefficient, ... }` in
// monomial order.
impl Serialize for ModuleElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.terms.len()))?;
        for (m, c) in &self.terms {
            map.serialize_entry(&m.to_string(), c)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for ModuleElement {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        struct ElementVisitor;

        impl<'de> Visitor<'de> for ElementVisitor {
            type Value = ModuleElement;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a map from monomials to coefficients")
            }

            fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> std::result::Result<ModuleElement, A::Error> {
                let mut e = ModuleElement::zero();
                while let Some((key, coeff)) = access.next_entry::<String, f64>()? {
                    let mono: RawMonomial = key.parse().map_err(de::Error::custom)?;
                    e.add_term(mono, coeff);
                }
                Ok(e)
            }
        }

        deserializer.deserialize_map(ElementVisitor)
    }
}

pub(crate) trait TermSink {
    fn add(&mut self, mono: RawMonomial, coeff: f64);
}

impl TermSink for ModuleElement {
    fn add(&mut self, mono: RawMonomial, coeff: f64) {
        self.add_term(mono, coeff);
    }
}

/// Scratch accumulator with one coefficient per monomial slot. Much faster
/// than [`ModuleElement`] when many terms land on one value.
#[derive(Clone, Debug)]
pub struct DenseModule {
    coeff: Vec<f64>,
    touched: Vec<u16>,
}

impl Default for DenseModule {
    fn default() -> Self {
        DenseModule::new()
    }
}

impl DenseModule {
    pub fn new() -> Self {
        DenseModule {
            coeff: vec![0.0; MONOMIAL_SLOTS],
            touched: Vec::new(),
        }
    }

    pub fn add_term(&mut self, mono: RawMonomial, coeff: f64) {
        let n = mono.slot();
        if self.coeff[n] == 0.0 {
            self.touched.push(n as u16);
        }
        self.coeff[n] += coeff;
    }

    pub fn add_element(&mut self, e: &ModuleElement, s: f64) {
        for (m, c) in e.terms() {
            self.add_term(*m, c * s);
        }
    }

    /// `self += s * (a · e)`.
    pub fn lmul_gen_add(
        &mut self,
        a: SplitGenerator,
        e: &ModuleElement,
        s: f64,
        convention: Composition,
    ) -> Result<()> {
        for (&m, c) in e.terms() {
            lmul_gen_mono(self, a, m, c * s, convention)?;
        }
        Ok(())
    }

    /// The accumulated element; leaves the accumulator at zero.
    pub fn take(&mut self) -> ModuleElement {
        self.touched.sort_unstable();
        self.touched.dedup();
        let mut terms = BTreeMap::new();
        for n in self.touched.drain(..) {
            let c = std::mem::take(&mut self.coeff[usize::from(n)]);
            if c != 0.0 {
                terms.insert(RawMonomial::from_slot(usize::from(n)).expect("slot in range"), c);
            }
        }
        ModuleElement { terms }
    }
}

impl TermSink for DenseModule {
    fn add(&mut self, mono: RawMonomial, coeff: f64) {
        self.add_term(mono, coeff);
    }
}

/// The product `b·c` rewritten into canonical order.
pub fn canon_pair(b: SplitGenerator, c: SplitGenerator) -> ModuleElement {
    let mut out = ModuleElement::zero();
    canon_pair_into(&mut out, b, c, 1.0);
    out
}

fn canon_pair_into<S: TermSink>(out: &mut S, b: SplitGenerator, c: SplitGenerator, coeff: f64) {
    match b.cmp(&c) {
        Ordering::Equal => {}
        Ordering::Less => out.add(RawMonomial::Pair(b, c), coeff),
        Ordering::Greater => {
            // same axis and b > c means b = e_j^-, c = e_j^+
            if b.axis == c.axis {
                out.add(RawMonomial::Unit, -coeff);
            }
            out.add(RawMonomial::Pair(c, b), -coeff);
        }
    }
}

/// The left-nested product `(ab)c`, expressed as `-a(bc)`.
pub fn reassociate(a: SplitGenerator, b: SplitGenerator, c: SplitGenerator) -> ModuleElement {
    ModuleElement::term(RawMonomial::Triple(a, b, c), -1.0)
}

/// `e_k ↦ e_k^+ + e_k^-` for every `k`, including the real unit.
pub fn embed_oct(x: &Octonion) -> ModuleElement {
    let mut out = ModuleElement::zero();
    for (k, c) in x.iter() {
        for sign in Sign::BOTH {
            out.add_term(RawMonomial::Gen(SplitGenerator::new(k, sign)), c);
        }
    }
    out
}

fn lmul_gen_mono<S: TermSink>(
    out: &mut S,
    a: SplitGenerator,
    mono: RawMonomial,
    coeff: f64,
    convention: Composition,
) -> Result<()> {
    match (mono, convention) {
        (RawMonomial::Unit, _) => out.add(RawMonomial::Gen(a), coeff),
        (RawMonomial::Gen(b), Composition::Nested) => out.add(RawMonomial::Pair(a, b), coeff),
        (RawMonomial::Gen(b), Composition::Flat) => canon_pair_into(out, a, b, coeff),
        (RawMonomial::Pair(b, c), Composition::Nested) => out.add(RawMonomial::Triple(a, b, c), coeff),
        // canon_pair(a, b) attached to c, with (pq)c = -p(qc)
        (RawMonomial::Pair(b, c), Composition::Flat) => match a.cmp(&b) {
            Ordering::Equal => {}
            Ordering::Less => out.add(RawMonomial::Triple(a, b, c), -coeff),
            Ordering::Greater => {
                if a.axis == b.axis {
                    out.add(RawMonomial::Gen(c), -coeff);
                }
                out.add(RawMonomial::Triple(b, a, c), coeff);
            }
        },
        (RawMonomial::Triple(..), _) => return Err(Error::DegreeOverflow(4)),
    }
    Ok(())
}

/// Left multiplication by a split generator.
pub fn lmul_gen(a: SplitGenerator, e: &ModuleElement, convention: Composition) -> Result<ModuleElement> {
    let mut out = ModuleElement::zero();
    lmul_gen_into(&mut out, a, e, 1.0, convention)?;
    Ok(out)
}

/// `out += s * (a · e)`.
pub fn lmul_gen_into(
    out: &mut ModuleElement,
    a: SplitGenerator,
    e: &ModuleElement,
    s: f64,
    convention: Composition,
) -> Result<()> {
    if s == 0.0 {
        return Ok(());
    }
    for (&m, c) in e.terms() {
        lmul_gen_mono(out, a, m, c * s, convention)?;
    }
    Ok(())
}

/// `e · x` with `x` embedded in the split algebra. A pair times a generator
/// is left-nested and therefore reassociated with a sign flip.
pub fn rmul_oct(e: &ModuleElement, x: &Octonion) -> Result<ModuleElement> {
    let mut out = ModuleElement::zero();
    rmul_oct_into(&mut out, e, x, 1.0)?;
    Ok(out)
}

/// `out += s * (e · x)`.
pub fn rmul_oct_into(out: &mut ModuleElement, e: &ModuleElement, x: &Octonion, s: f64) -> Result<()> {
    if e.degree().is_some_and(|d| d > 2) {
        return Err(Error::DegreeOverflow(4));
    }
    for (k, xk) in x.iter() {
        if xk == 0.0 {
            continue;
        }
        for sign in Sign::BOTH {
            let g = SplitGenerator::new(k, sign);
            for (&m, c) in e.terms() {
                let w = c * xk * s;
                match m {
                    RawMonomial::Unit => out.add_term(RawMonomial::Gen(g), w),
                    RawMonomial::Gen(a) => out.add_term(RawMonomial::Pair(a, g), w),
                    RawMonomial::Pair(a, b) => out.add_term(RawMonomial::Triple(a, b, g), -w),
                    RawMonomial::Triple(..) => unreachable!(),
                }
            }
        }
    }
    Ok(())
}

/// `x · e` with `x` embedded and each of its generators applied with the
/// nested convention. Octonion units nest onto pairs without a sign.
pub fn lmul_oct(x: &Octonion, e: &ModuleElement) -> Result<ModuleElement> {
    let mut out = ModuleElement::zero();
    lmul_oct_into(&mut out, x, e, 1.0)?;
    Ok(out)
}

/// `out += s * (x · e)`.
pub fn lmul_oct_into(out: &mut ModuleElement, x: &Octonion, e: &ModuleElement, s: f64) -> Result<()> {
    for (k, xk) in x.iter() {
        if xk == 0.0 {
            continue;
        }
        for sign in Sign::BOTH {
            lmul_gen_into(out, SplitGenerator::new(k, sign), e, xk * s, Composition::Nested)?;
        }
    }
    Ok(())
}

/// Rewrites every pair (top-level or inner pair of a triple) into
/// canonical order. Idempotent and linear.
pub fn canonicalize(e: &ModuleElement) -> ModuleElement {
    let mut out = ModuleElement::zero();
    for (&m, c) in e.terms() {
        match m {
            RawMonomial::Unit | RawMonomial::Gen(_) => out.add_term(m, c),
            RawMonomial::Pair(b, c2) => canon_pair_into(&mut out, b, c2, c),
            RawMonomial::Triple(a, b, c2) => {
                for (inner, s) in canon_pair(b, c2).terms() {
                    match *inner {
                        RawMonomial::Unit => out.add_term(RawMonomial::Gen(a), c * s),
                        RawMonomial::Pair(p, q) => out.add_term(RawMonomial::Triple(a, p, q), c * s),
                        _ => unreachable!("canon_pair yields degree 0 or 2"),
                    }
                }
            }
        }
    }
    out
}
