//! Univariate supertropical polynomials, read as functions.
//!
//! Corner roots and essential monomials come from the upper concave hull of
//! the points `(i, ν(α_i))`, computed on exact rationals.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::element::Element;
use crate::error::{Error, Result};

/// Dense coefficient list, index `i` holding the coefficient of `λ^i`.
///
/// Trailing zero coefficients are trimmed, so the last coefficient is
/// non-zero except for the zero polynomial, stored as `[-inf]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Element>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Monomial {
    Essential,
    QuasiEssential,
    Inessential,
}

/// A corner root with its multiplicity; `value` is tangible or zero.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CornerRoot {
    pub value: Element,
    pub multiplicity: usize,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Element>) -> Self {
        while coeffs.len() > 1 && coeffs.last().is_some_and(Element::is_zero) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(Element::Zero);
        }
        Poly { coeffs }
    }

    /// `λ^d`.
    pub fn monomial(coeff: Element, d: usize) -> Self {
        let mut c = vec![Element::Zero; d + 1];
        c[d] = coeff;
        Poly::new(c)
    }

    /// `λ + a`.
    pub fn linear(a: Element) -> Self {
        Poly::new(vec![a, Element::one()])
    }

    pub fn coeffs(&self) -> &[Element] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Element {
        self.coeffs.get(i).cloned().unwrap_or(Element::Zero)
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_zero()
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&Element::one())
    }

    pub fn eval(&self, a: &Element) -> Element {
        // Horner form is exact here since the semiring is commutative and distributive.
        self.coeffs.iter().rev().fold(Element::Zero, |acc, c| acc.mul(a).add(c))
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Poly::new((0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = vec![Element::Zero; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].add(&a.mul(b));
            }
        }
        Poly::new(out)
    }

    pub fn pow(&self, m: usize) -> Poly {
        (0..m).fold(Poly::monomial(Element::one(), 0), |acc, _| acc.mul(self))
    }

    /// Coefficientwise ghost-surpassing, padding the shorter one with zeros.
    pub fn ghost_surpasses(&self, other: &Poly) -> bool {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).all(|i| self.coeff(i).ghost_surpasses(&other.coeff(i)))
    }

    /// Points `(i, ν(α_i))` of the non-zero coefficients.
    fn support(&self) -> Vec<(usize, BigRational)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter_map(|(i, c)| c.value().map(|v| (i, v.clone())))
            .collect()
    }

    /// Classification of every monomial, indexed by degree.
    pub fn classify(&self) -> Vec<Monomial> {
        let pts = self.support();
        let lo = pts.first().map(|p| p.0);
        let hi = pts.last().map(|p| p.0);
        self.coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let Some(v) = c.value() else {
                    return Monomial::Inessential;
                };
                if Some(i) == lo || Some(i) == hi {
                    return Monomial::Essential;
                }
                // Height at x = i of the upper hull of the other points.
                let mut best: Option<BigRational> = None;
                for (j, vj) in pts.iter().filter(|p| p.0 < i) {
                    for (k, vk) in pts.iter().filter(|p| p.0 > i) {
                        let t = BigRational::new(BigInt::from(i - j), BigInt::from(k - j));
                        let h = vj + (vk - vj) * t;
                        if best.as_ref().is_none_or(|b| h > *b) {
                            best = Some(h);
                        }
                    }
                }
                let best = best.expect("interior point has neighbours");
                match v.cmp(&best) {
                    std::cmp::Ordering::Greater => Monomial::Essential,
                    std::cmp::Ordering::Equal => Monomial::QuasiEssential,
                    std::cmp::Ordering::Less => Monomial::Inessential,
                }
            })
            .collect()
    }

    /// The essential part: essential monomials kept, all others zeroed.
    pub fn essential_part(&self) -> Poly {
        let kinds = self.classify();
        Poly::new(
            self.coeffs
                .iter()
                .zip(kinds)
                .map(|(c, k)| if k == Monomial::Essential { c.clone() } else { Element::Zero })
                .collect(),
        )
    }

    /// Vertices of the upper concave hull of the support, left to right.
    fn hull(&self) -> Vec<(usize, BigRational)> {
        let mut hull: Vec<(usize, BigRational)> = Vec::new();
        for p in self.support() {
            while hull.len() >= 2 {
                let (x1, y1) = &hull[hull.len() - 2];
                let (x2, y2) = &hull[hull.len() - 1];
                // Drop the middle point unless it lies strictly above the chord.
                let lhs = (y2 - y1) * BigRational::from_integer(BigInt::from(p.0 - x1));
                let rhs = (&p.1 - y1) * BigRational::from_integer(BigInt::from(x2 - x1));
                if lhs <= rhs {
                    hull.pop();
                } else {
                    break;
                }
            }
            hull.push(p);
        }
        hull
    }

    /// Corner roots in decreasing order. A zero constant term contributes
    /// the root `-inf` with multiplicity equal to the lowest degree present.
    pub fn corner_roots(&self) -> Result<Vec<CornerRoot>> {
        if self.degree() == 0 {
            return Err(Error::ConstantPolynomial);
        }
        let hull = self.hull();
        let mut roots = Vec::new();
        for w in hull.windows(2).rev() {
            let (x1, y1) = &w[0];
            let (x2, y2) = &w[1];
            let value = (y1 - y2) / BigRational::from_integer(BigInt::from(x2 - x1));
            roots.push(CornerRoot { value: Element::Tangible(value), multiplicity: x2 - x1 });
        }
        let lowest = hull.first().map_or(0, |p| p.0);
        if lowest > 0 {
            roots.push(CornerRoot { value: Element::Zero, multiplicity: lowest });
        }
        Ok(roots)
    }

    /// A monic non-constant polynomial with a single corner root.
    pub fn is_primary(&self) -> Result<bool> {
        if !self.is_monic() {
            return Err(Error::NotMonic);
        }
        Ok(self.corner_roots()?.len() == 1)
    }

    pub fn to_json(&self) -> Vec<String> {
        self.coeffs.iter().map(Element::to_string).collect()
    }

    pub fn from_json(tokens: &[String]) -> Result<Poly> {
        tokens.iter().map(|t| t.parse()).collect::<Result<Vec<_>>>().map(Poly::new)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "-inf");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                let var = match i {
                    0 => String::new(),
                    1 => "l".to_string(),
                    _ => format!("l^{i}"),
                };
                match (i, *c == Element::one()) {
                    (0, _) => c.to_string(),
                    (_, true) => var,
                    (_, false) => format!("{c} {var}"),
                }
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl FromStr for Poly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Poly> {
        let bad = || Error::Parse(format!("bad polynomial {s:?}"));
        let mut coeffs: Vec<Element> = Vec::new();
        for term in s.split(" + ") {
            let words: Vec<&str> = term.split_whitespace().collect();
            let (coeff, var) = match words.as_slice() {
                [w] if w.starts_with('l') => (Element::one(), Some(*w)),
                [w] => (w.parse()?, None),
                [c, w] if w.starts_with('l') => (c.parse()?, Some(*w)),
                _ => return Err(bad()),
            };
            let deg = match var {
                None => 0,
                Some("l") => 1,
                Some(w) => w
                    .strip_prefix("l^")
                    .and_then(|d| d.parse::<usize>().ok())
                    .ok_or_else(bad)?,
            };
            if coeffs.len() <= deg {
                coeffs.resize(deg + 1, Element::Zero);
            }
            coeffs[deg] = coeffs[deg].add(&coeff);
        }
        Ok(Poly::new(coeffs))
    }
}
