//! Exact scalars: GF(p), GF(p^k) and the rationals.
//!
//! Field descriptors are interned: constructing the same descriptor twice
//! yields the same [`Field`] handle, so handles are `Copy` and compare by
//! address. Every [`FieldElem`] is stored canonically (reduced residue,
//! reduced coefficient index, or a fraction in lowest terms with positive
//! denominator) and equality is structural.

mod char2;
mod finite;

use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;
use std::sync::{Mutex, OnceLock};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use finite::FiniteTables;

pub use char2::{absolute_trace, artin_schreier_solve, frobenius, frobenius_inverse};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FieldDescriptor {
    Prime {
        p: u32,
    },
    /// `modulus` is monic of degree `k`, coefficients lowest degree first.
    Extension {
        p: u32,
        k: u32,
        modulus: Vec<u32>,
    },
    Rationals,
}

impl FieldDescriptor {
    pub fn characteristic(&self) -> u32 {
        match self {
            FieldDescriptor::Prime { p } | FieldDescriptor::Extension { p, .. } => *p,
            FieldDescriptor::Rationals => 0,
        }
    }
}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldDescriptor::Prime { p } => write!(f, "gf({p})"),
            FieldDescriptor::Extension { p, k, modulus } => {
                write!(f, "gf({p}^{k};modulus={})", int_list(modulus))
            }
            FieldDescriptor::Rationals => write!(f, "q"),
        }
    }
}

fn int_list(v: &[u32]) -> String {
    let parts: Vec<String> = v.iter().map(|c| c.to_string()).collect();
    format!("[{}]", parts.join(","))
}

fn parse_int_list(s: &str, ctx: &str) -> Result<Vec<u32>> {
    let inner = s
        .trim()
        .strip_prefix('[')
        .and_then(|r| r.strip_suffix(']'))
        .ok_or_else(|| Error::parse(ctx, format!("expected a bracketed list, got {s:?}")))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    inner
        .split(',')
        .map(|c| {
            c.trim()
                .parse::<u32>()
                .map_err(|e| Error::parse(ctx, format!("bad coefficient {c:?}: {e}")))
        })
        .collect()
}

/// `q = p^k` with `p` prime.
fn prime_power(q: u32) -> Option<(u32, u32)> {
    let p = (2..=q).find(|d| q % d == 0)?;
    let (mut r, mut k) = (q, 0);
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1).then_some((p, k))
}

impl FromStr for FieldDescriptor {
    type Err = Error;

    /// Accepts `q`, `gf(p)`, `gf(p^k)` or `gf(q)` (built-in modulus) and
    /// `gf(p^k;modulus=[..])`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("q") {
            return Ok(FieldDescriptor::Rationals);
        }
        let body = s
            .strip_prefix("gf(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::parse("field", format!("unrecognized field descriptor {s:?}")))?;
        let (size, modulus) = match body.split_once(';') {
            Some((size, rest)) => {
                let m = rest
                    .trim()
                    .strip_prefix("modulus=")
                    .ok_or_else(|| Error::parse("field", "expected `modulus=[..]`"))?;
                (size, Some(parse_int_list(m, "field modulus")?))
            }
            None => (body, None),
        };
        let num = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|e| Error::parse("field", format!("bad integer {t:?}: {e}")))
        };
        match size.split_once('^') {
            None => {
                if modulus.is_some() {
                    return Err(Error::parse("field", "prime fields take no modulus"));
                }
                let q = num(size)?;
                match prime_power(q) {
                    Some((p, k)) if k > 1 => {
                        let modulus = finite::default_modulus(p, k).ok_or_else(|| {
                            Error::InvalidField(format!("no modulus available for gf({p}^{k})"))
                        })?;
                        Ok(FieldDescriptor::Extension { p, k, modulus })
                    }
                    _ => Ok(FieldDescriptor::Prime { p: q }),
                }
            }
            Some((p, k)) => {
                let (p, k) = (num(p)?, num(k)?);
                if k == 1 && modulus.is_none() {
                    return Ok(FieldDescriptor::Prime { p });
                }
                let modulus = match modulus {
                    Some(m) => m,
                    None => finite::default_modulus(p, k).ok_or_else(|| {
                        Error::InvalidField(format!("no modulus available for gf({p}^{k})"))
                    })?,
                };
                Ok(FieldDescriptor::Extension { p, k, modulus })
            }
        }
    }
}

#[derive(Debug)]
pub struct FieldData {
    desc: FieldDescriptor,
    finite: Option<FiniteTables>,
}

/// Handle to an interned field. Cheap to copy; equality is identity.
#[derive(Clone, Copy)]
pub struct Field(&'static FieldData);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.0, other.0)
    }
}
impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        std::ptr::hash(self.0, state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.desc)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0.desc)
    }
}

fn registry() -> &'static Mutex<Vec<&'static FieldData>> {
    static REG: OnceLock<Mutex<Vec<&'static FieldData>>> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(Vec::new()))
}

impl Field {
    /// Validates and interns a descriptor.
    pub fn new(desc: FieldDescriptor) -> Result<Field> {
        let mut reg = registry().lock().expect("field registry poisoned");
        if let Some(d) = reg.iter().find(|d| d.desc == desc) {
            return Ok(Field(d));
        }
        let finite = match &desc {
            FieldDescriptor::Prime { p } => Some(FiniteTables::prime(*p)?),
            FieldDescriptor::Extension { p, k, modulus } => {
                Some(FiniteTables::extension(*p, *k, modulus)?)
            }
            FieldDescriptor::Rationals => None,
        };
        let data: &'static FieldData = Box::leak(Box::new(FieldData { desc, finite }));
        reg.push(data);
        Ok(Field(data))
    }

    pub fn parse(s: &str) -> Result<Field> {
        Field::new(s.parse()?)
    }

    pub fn gf(p: u32) -> Result<Field> {
        Field::new(FieldDescriptor::Prime { p })
    }

    /// GF(p^k) with the built-in modulus; `k = 1` is the prime field.
    pub fn gf_ext(p: u32, k: u32) -> Result<Field> {
        if k == 1 {
            return Field::gf(p);
        }
        let modulus = finite::default_modulus(p, k)
            .ok_or_else(|| Error::InvalidField(format!("no modulus for gf({p}^{k})")))?;
        Field::new(FieldDescriptor::Extension { p, k, modulus })
    }

    pub fn rationals() -> Field {
        Field::new(FieldDescriptor::Rationals).expect("rationals always construct")
    }

    pub fn descriptor(&self) -> &FieldDescriptor {
        &self.0.desc
    }

    pub fn characteristic(&self) -> u32 {
        self.0.desc.characteristic()
    }

    pub fn is_finite(&self) -> bool {
        self.0.finite.is_some()
    }

    /// Number of elements, or `None` for the rationals.
    pub fn order(&self) -> Option<usize> {
        self.0.finite.as_ref().map(|t| t.q)
    }

    /// Extension degree over the prime field (1 for GF(p) and for the rationals).
    pub fn degree(&self) -> u32 {
        self.0.finite.as_ref().map_or(1, |t| t.k)
    }

    pub(crate) fn tables(&self) -> Option<&'static FiniteTables> {
        self.0.finite.as_ref()
    }

    pub fn zero(&self) -> FieldElem {
        match self.tables() {
            Some(_) => FieldElem::fin(*self, 0),
            None => FieldElem::rat(*self, BigRational::zero()),
        }
    }

    pub fn one(&self) -> FieldElem {
        match self.tables() {
            Some(_) => FieldElem::fin(*self, 1),
            None => FieldElem::rat(*self, BigRational::one()),
        }
    }

    /// Image of an integer under the canonical ring map Z -> F.
    pub fn from_int(&self, n: i64) -> FieldElem {
        match self.tables() {
            Some(t) => {
                let r = n.rem_euclid(t.p as i64) as u8;
                FieldElem::fin(*self, r)
            }
            None => FieldElem::rat(*self, BigRational::from_integer(BigInt::from(n))),
        }
    }

    /// `num/den` in the field; `None` when `den` vanishes in the field.
    pub fn fraction(&self, num: i64, den: i64) -> Option<FieldElem> {
        let d = self.from_int(den);
        if d.is_zero() {
            return None;
        }
        Some(self.from_int(num) * d.inv().ok()?)
    }

    pub fn from_rational(&self, r: BigRational) -> Result<FieldElem> {
        if self.is_finite() {
            return Err(Error::WrongField("rational value in a finite field".into()));
        }
        Ok(FieldElem::rat(*self, r))
    }

    /// Element with the given canonical index (finite fields only).
    pub fn from_index(&self, idx: usize) -> Result<FieldElem> {
        let t = self
            .tables()
            .ok_or_else(|| Error::WrongField("indices exist only for finite fields".into()))?;
        if idx >= t.q {
            return Err(Error::WrongField(format!(
                "index {idx} out of range for {self}"
            )));
        }
        Ok(FieldElem::fin(*self, idx as u8))
    }

    /// Element from its coefficient list (lowest degree first).
    pub fn from_coefficients(&self, coeffs: &[u32]) -> Result<FieldElem> {
        let t = self
            .tables()
            .ok_or_else(|| Error::WrongField("coefficients exist only for finite fields".into()))?;
        if coeffs.len() != t.k as usize || coeffs.iter().any(|&c| c >= t.p) {
            return Err(Error::WrongField(format!(
                "expected {} coefficients in [0,{})",
                t.k, t.p
            )));
        }
        Ok(FieldElem::fin(*self, t.from_digits(coeffs) as u8))
    }

    /// All elements in index order (finite fields only).
    pub fn elements(&self) -> Result<Vec<FieldElem>> {
        let t = self
            .tables()
            .ok_or_else(|| Error::WrongField("the rationals cannot be enumerated".into()))?;
        Ok((0..t.q).map(|i| FieldElem::fin(*self, i as u8)).collect())
    }

    /// Generator `x` of GF(p^k) over GF(p) (the class of the indeterminate).
    pub fn generator(&self) -> Result<FieldElem> {
        let t = self
            .tables()
            .ok_or_else(|| Error::WrongField("no generator for the rationals".into()))?;
        if t.k < 2 {
            return Err(Error::WrongField(format!("{self} is a prime field")));
        }
        Ok(FieldElem::fin(*self, t.p as u8))
    }

    /// Parses the text encoding of an element: `3`, `[1,0,1]`, or `3/4`.
    pub fn parse_elem(&self, s: &str) -> Result<FieldElem> {
        let s = s.trim();
        match self.tables() {
            Some(t) if t.k >= 2 => {
                let coeffs = parse_int_list(s, "field element")?;
                self.from_coefficients(&coeffs)
                    .map_err(|e| Error::parse("field element", e.to_string()))
            }
            Some(t) => {
                let v: u32 = s
                    .parse()
                    .map_err(|e| Error::parse("field element", format!("{s:?}: {e}")))?;
                if v >= t.p {
                    return Err(Error::parse(
                        "field element",
                        format!("{v} is not reduced mod {}", t.p),
                    ));
                }
                Ok(FieldElem::fin(*self, v as u8))
            }
            None => {
                let (n, d) = match s.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (s, "1"),
                };
                let n: BigInt = n
                    .parse()
                    .map_err(|e| Error::parse("field element", format!("{s:?}: {e}")))?;
                let d: BigInt = d
                    .parse()
                    .map_err(|e| Error::parse("field element", format!("{s:?}: {e}")))?;
                if d.is_zero() {
                    return Err(Error::parse(
                        "field element",
                        format!("{s:?}: zero denominator"),
                    ));
                }
                Ok(FieldElem::rat(*self, BigRational::new(n, d)))
            }
        }
    }

    /// All roots of `a t^2 + b t + c` in the field (enumeration over finite
    /// fields, rational-square test of the discriminant over Q).
    pub fn quadratic_roots(&self, a: &FieldElem, b: &FieldElem, c: &FieldElem) -> Vec<FieldElem> {
        if self.is_finite() {
            return self
                .elements()
                .expect("finite")
                .into_iter()
                .filter(|t| (a * t * t + b * t + c).is_zero())
                .collect();
        }
        if a.is_zero() {
            if b.is_zero() {
                return Vec::new();
            }
            return vec![-(c / b)];
        }
        let disc = b * b - self.from_int(4) * a * c;
        let Some(root) = disc.rational_sqrt() else {
            return Vec::new();
        };
        let two_a = self.from_int(2) * a;
        let mut out = vec![(-b + &root) / &two_a];
        if !root.is_zero() {
            out.push((-b - root) / two_a);
        }
        out
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Fin(u8),
    Rat(Box<BigRational>),
}

/// An exact scalar tied to its field.
#[derive(Clone)]
pub struct FieldElem {
    field: Field,
    repr: Repr,
}

impl PartialEq for FieldElem {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.repr == other.repr
    }
}
impl Eq for FieldElem {}

impl Hash for FieldElem {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.repr.hash(state);
    }
}

impl FieldElem {
    #[inline]
    fn fin(field: Field, v: u8) -> Self {
        FieldElem {
            field,
            repr: Repr::Fin(v),
        }
    }

    fn rat(field: Field, r: BigRational) -> Self {
        FieldElem {
            field,
            repr: Repr::Rat(Box::new(r)),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        match &self.repr {
            Repr::Fin(v) => *v == 0,
            Repr::Rat(r) => r.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.repr {
            Repr::Fin(v) => *v == 1,
            Repr::Rat(r) => r.is_one(),
        }
    }

    /// Canonical index for finite-field elements.
    pub fn index(&self) -> Option<usize> {
        match self.repr {
            Repr::Fin(v) => Some(v as usize),
            Repr::Rat(_) => None,
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.repr {
            Repr::Rat(r) => Some(r),
            Repr::Fin(_) => None,
        }
    }

    /// Coefficient list, lowest degree first (finite fields only).
    pub fn coefficients(&self) -> Option<Vec<u32>> {
        let t = self.field.tables()?;
        self.index().map(|i| t.digits(i))
    }

    /// Strict positivity; always false outside the rationals.
    pub fn is_positive(&self) -> bool {
        self.as_rational().is_some_and(|r| r.is_positive())
    }

    pub fn inv(&self) -> Result<FieldElem> {
        if self.is_zero() {
            return Err(Error::ZeroInversion);
        }
        Ok(match &self.repr {
            Repr::Fin(v) => {
                let t = self.field.tables().expect("finite");
                FieldElem::fin(self.field, t.inv[*v as usize])
            }
            Repr::Rat(r) => FieldElem::rat(self.field, r.recip()),
        })
    }

    pub fn pow(&self, mut e: u64) -> FieldElem {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Square root over Q when the value is a square of a rational.
    pub fn rational_sqrt(&self) -> Option<FieldElem> {
        let r = self.as_rational()?;
        if r.is_negative() {
            return None;
        }
        let n = r.numer().sqrt();
        let d = r.denom().sqrt();
        if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
            Some(FieldElem::rat(self.field, BigRational::new(n, d)))
        } else {
            None
        }
    }

    /// Some square root, when one exists (enumeration over finite fields).
    pub fn sqrt(&self) -> Option<FieldElem> {
        match self.field.tables() {
            Some(_) => self
                .field
                .elements()
                .ok()?
                .into_iter()
                .find(|t| &(t * t) == self),
            None => self.rational_sqrt(),
        }
    }

    #[inline]
    fn check_field(&self, other: &FieldElem) {
        assert!(
            self.field == other.field,
            "field mismatch: {} vs {}",
            self.field,
            other.field
        );
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Fin(v) => {
                let t = self.field.tables().expect("finite");
                if t.k == 1 {
                    write!(f, "{v}")
                } else {
                    write!(f, "{}", int_list(&t.digits(*v as usize)))
                }
            }
            Repr::Rat(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
        }
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'b> Add<&'b FieldElem> for &FieldElem {
    type Output = FieldElem;
    #[inline]
    fn add(self, rhs: &'b FieldElem) -> FieldElem {
        self.check_field(rhs);
        match (&self.repr, &rhs.repr) {
            (Repr::Fin(a), Repr::Fin(b)) => {
                FieldElem::fin(self.field, self.field.tables().unwrap().add(*a, *b))
            }
            (Repr::Rat(a), Repr::Rat(b)) => FieldElem::rat(self.field, &**a + &**b),
            _ => unreachable!("representation mismatch within one field"),
        }
    }
}

impl<'b> Sub<&'b FieldElem> for &FieldElem {
    type Output = FieldElem;
    #[inline]
    fn sub(self, rhs: &'b FieldElem) -> FieldElem {
        self.check_field(rhs);
        match (&self.repr, &rhs.repr) {
            (Repr::Fin(a), Repr::Fin(b)) => {
                FieldElem::fin(self.field, self.field.tables().unwrap().sub(*a, *b))
            }
            (Repr::Rat(a), Repr::Rat(b)) => FieldElem::rat(self.field, &**a - &**b),
            _ => unreachable!("representation mismatch within one field"),
        }
    }
}

impl<'b> Mul<&'b FieldElem> for &FieldElem {
    type Output = FieldElem;
    #[inline]
    fn mul(self, rhs: &'b FieldElem) -> FieldElem {
        self.check_field(rhs);
        match (&self.repr, &rhs.repr) {
            (Repr::Fin(a), Repr::Fin(b)) => {
                FieldElem::fin(self.field, self.field.tables().unwrap().mul(*a, *b))
            }
            (Repr::Rat(a), Repr::Rat(b)) => {
                if a.is_zero() || b.is_zero() {
                    self.field.zero()
                } else {
                    FieldElem::rat(self.field, &**a * &**b)
                }
            }
            _ => unreachable!("representation mismatch within one field"),
        }
    }
}

/// Panics on a zero divisor; use [`FieldElem::inv`] for a checked path.
impl<'b> Div<&'b FieldElem> for &FieldElem {
    type Output = FieldElem;
    fn div(self, rhs: &'b FieldElem) -> FieldElem {
        self * &rhs.inv().expect("division by zero field element")
    }
}

impl Neg for &FieldElem {
    type Output = FieldElem;
    #[inline]
    fn neg(self) -> FieldElem {
        match &self.repr {
            Repr::Fin(a) => {
                FieldElem::fin(self.field, self.field.tables().unwrap().neg[*a as usize])
            }
            Repr::Rat(a) => FieldElem::rat(self.field, -&**a),
        }
    }
}

impl Neg for FieldElem {
    type Output = FieldElem;
    fn neg(self) -> FieldElem {
        -&self
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<FieldElem> for FieldElem {
            type Output = FieldElem;
            #[inline]
            fn $m(self, rhs: FieldElem) -> FieldElem { (&self).$m(&rhs) }
        }
        impl<'b> $tr<&'b FieldElem> for FieldElem {
            type Output = FieldElem;
            #[inline]
            fn $m(self, rhs: &'b FieldElem) -> FieldElem { (&self).$m(rhs) }
        }
        impl $tr<FieldElem> for &FieldElem {
            type Output = FieldElem;
            #[inline]
            fn $m(self, rhs: FieldElem) -> FieldElem { self.$m(&rhs) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl AddAssign<&FieldElem> for FieldElem {
    #[inline]
    fn add_assign(&mut self, rhs: &FieldElem) {
        *self = &*self + rhs;
    }
}
impl AddAssign<FieldElem> for FieldElem {
    #[inline]
    fn add_assign(&mut self, rhs: FieldElem) {
        *self = &*self + &rhs;
    }
}
impl SubAssign<&FieldElem> for FieldElem {
    #[inline]
    fn sub_assign(&mut self, rhs: &FieldElem) {
        *self = &*self - rhs;
    }
}
impl MulAssign<&FieldElem> for FieldElem {
    #[inline]
    fn mul_assign(&mut self, rhs: &FieldElem) {
        *self = &*self * rhs;
    }
}
