//! Scalars of the supertropical semifield over the rationals, in logarithmic
//! notation: `1` is the rational `0`, `0` is `-inf`, multiplication adds
//! log-values and addition takes the larger ν-value, ghosting ties.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Which layer of the semifield an element lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tag {
    Zero,
    Tangible,
    Ghost,
}

/// A supertropical scalar.
///
/// `Zero` is the adjoined additive identity (`-inf`). Tangible and ghost
/// elements carry an exact rational log-value; ν is the identity on values, so
/// a tangible and a ghost are ν-equivalent exactly when their values agree.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub enum Element {
    #[default]
    Zero,
    Tangible(BigRational),
    Ghost(BigRational),
}

pub fn rat(p: i64, q: i64) -> BigRational {
    BigRational::new(BigInt::from(p), BigInt::from(q))
}

fn int(p: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(p))
}

impl Element {
    /// The multiplicative unit, log-value `0`.
    pub fn one() -> Self {
        Element::Tangible(BigRational::zero())
    }

    pub fn zero() -> Self {
        Element::Zero
    }

    pub fn tangible(v: i64) -> Self {
        Element::Tangible(int(v))
    }

    pub fn ghost(v: i64) -> Self {
        Element::Ghost(int(v))
    }

    pub fn tangible_frac(p: i64, q: i64) -> Self {
        Element::Tangible(rat(p, q))
    }

    pub fn tag(&self) -> Tag {
        match self {
            Element::Zero => Tag::Zero,
            Element::Tangible(_) => Tag::Tangible,
            Element::Ghost(_) => Tag::Ghost,
        }
    }

    /// Log-value, `None` for zero.
    pub fn value(&self) -> Option<&BigRational> {
        match self {
            Element::Zero => None,
            Element::Tangible(v) | Element::Ghost(v) => Some(v),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Element::Zero)
    }

    pub fn is_tangible(&self) -> bool {
        matches!(self, Element::Tangible(_))
    }

    pub fn is_ghost(&self) -> bool {
        matches!(self, Element::Ghost(_))
    }

    /// Membership in the ghost ideal with zero, 𝒢₀.
    pub fn in_ghost_ideal(&self) -> bool {
        !self.is_tangible()
    }

    /// Membership in 𝒯₀ (tangible or zero).
    pub fn is_tangible_or_zero(&self) -> bool {
        !self.is_ghost()
    }

    /// Total order on ν-values; zero is below everything.
    pub fn cmp_nu(&self, other: &Element) -> Ordering {
        match (self.value(), other.value()) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Less,
            (Some(_), None) => Ordering::Greater,
            (Some(a), Some(b)) => a.cmp(b),
        }
    }

    pub fn nu_eq(&self, other: &Element) -> bool {
        self.cmp_nu(other) == Ordering::Equal
    }

    pub fn add(&self, other: &Element) -> Element {
        match self.cmp_nu(other) {
            Ordering::Greater => self.clone(),
            Ordering::Less => other.clone(),
            Ordering::Equal => self.nu(),
        }
    }

    pub fn mul(&self, other: &Element) -> Element {
        match (self, other) {
            (Element::Zero, _) | (_, Element::Zero) => Element::Zero,
            (Element::Tangible(a), Element::Tangible(b)) => Element::Tangible(a + b),
            (a, b) => Element::Ghost(a.value().unwrap() + b.value().unwrap()),
        }
    }

    /// The ghost map ν.
    pub fn nu(&self) -> Element {
        match self {
            Element::Zero => Element::Zero,
            Element::Tangible(v) | Element::Ghost(v) => Element::Ghost(v.clone()),
        }
    }

    /// The tangible lift ν̂ (identity on tangibles).
    pub fn hat(&self) -> Element {
        match self {
            Element::Zero => Element::Zero,
            Element::Tangible(v) | Element::Ghost(v) => Element::Tangible(v.clone()),
        }
    }

    /// `b.ghost_surpasses(a)`: `b = a` or `b = a + ghost`.
    pub fn ghost_surpasses(&self, a: &Element) -> bool {
        if self == a {
            return true;
        }
        match self {
            Element::Ghost(_) => self.cmp_nu(a) != Ordering::Less,
            _ => false,
        }
    }

    /// `a + b` lands in 𝒢₀.
    pub fn ghost_dependent(&self, b: &Element) -> bool {
        self.add(b).in_ghost_ideal()
    }

    /// Rational power in log notation; integer `r` gives powers and `1/n`
    /// gives roots. Zero admits only positive exponents.
    pub fn pow_root(&self, r: &BigRational) -> Result<Element> {
        match self {
            Element::Zero if r.is_positive() => Ok(Element::Zero),
            Element::Zero => Err(Error::Precondition(format!(
                "zero raised to non-positive exponent {r}"
            ))),
            Element::Tangible(v) => Ok(Element::Tangible(v * r)),
            Element::Ghost(v) => Ok(Element::Ghost(v * r)),
        }
    }

    /// Integer power; `pow(0)` is the unit.
    pub fn pow(&self, m: u64) -> Element {
        if m == 0 {
            return Element::one();
        }
        self.pow_root(&BigRational::from_integer(BigInt::from(m)))
            .expect("positive exponent")
    }

    /// Inverse of a tangible element.
    pub fn inv(&self) -> Option<Element> {
        match self {
            Element::Tangible(v) => Some(Element::Tangible(-v)),
            _ => None,
        }
    }

    /// Sum of an iterator, zero when empty.
    pub fn sum<'a, I: IntoIterator<Item = &'a Element>>(items: I) -> Element {
        items.into_iter().fold(Element::Zero, |acc, x| acc.add(x))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Zero => write!(f, "-inf"),
            Element::Tangible(v) => write!(f, "{}", fmt_rational(v)),
            Element::Ghost(v) => write!(f, "{}v", fmt_rational(v)),
        }
    }
}

fn fmt_rational(v: &BigRational) -> String {
    if v.denom().is_one() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (s, None),
    };
    let valid_int = |t: &str, signed: bool| {
        let digits = if signed { t.strip_prefix('-').unwrap_or(t) } else { t };
        !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
    };
    if !valid_int(num, true) {
        return None;
    }
    let n: BigInt = num.parse().ok()?;
    let d: BigInt = match den {
        Some(d) if valid_int(d, false) => d.parse().ok()?,
        Some(_) => return None,
        None => BigInt::one(),
    };
    if d.is_zero() {
        return None;
    }
    Some(BigRational::new(n, d))
}

impl FromStr for Element {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t == "-inf" {
            return Ok(Element::Zero);
        }
        let (body, ghost) = match t.strip_suffix('v') {
            Some(b) => (b, true),
            None => (t, false),
        };
        let v = parse_rational(body).ok_or_else(|| Error::Parse(format!("bad element token {s:?}")))?;
        Ok(if ghost { Element::Ghost(v) } else { Element::Tangible(v) })
    }
}

impl serde::Serialize for Element {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Element {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
