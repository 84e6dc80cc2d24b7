//! Exact arithmetic for homogeneous polynomials in two variables `x`, `y`
//! over the rationals.
//!
//! Every matrix entry in this crate is a [`HomPoly`]. The degree is part of
//! the type: the zero polynomial of degree `d` keeps its degree slot, which
//! the matrix degree ledgers rely on.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use std::fmt;
use std::ops::{Add, Mul, Neg};

pub type Rational = BigRational;

/// Shorthand for an exact rational from an integer pair.
pub fn rat(num: i64, den: i64) -> Rational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
}

/// A homogeneous bivariate polynomial of fixed degree with rational
/// coefficients. `coeffs[k]` is the coefficient of `x^(degree-k) * y^k`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HomPoly {
    degree: usize,
    coeffs: Vec<Rational>,
}

impl HomPoly {
    pub fn zero(degree: usize) -> Self {
        HomPoly {
            degree,
            coeffs: vec![Rational::zero(); degree + 1],
        }
    }

    pub fn from_coeffs(degree: usize, coeffs: Vec<Rational>) -> Result<Self, PolyError> {
        if coeffs.len() != degree + 1 {
            return Err(PolyError::DegreeMismatch(coeffs.len(), degree + 1));
        }
        Ok(HomPoly { degree, coeffs })
    }

    /// `c * x^dx * y^dy`, a polynomial of degree `dx + dy`.
    pub fn monomial(c: Rational, dx: usize, dy: usize) -> Self {
        let mut p = HomPoly::zero(dx + dy);
        p.coeffs[dy] = c;
        p
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^(degree-dy) * y^dy`.
    pub fn coeff(&self, dy: usize) -> &Rational {
        &self.coeffs[dy]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// True if the polynomial is `c * x^dx * y^dy` with a single nonzero `c`.
    /// Returns the coefficient and the `y`-exponent.
    pub fn as_monomial(&self) -> Option<(&Rational, usize)> {
        let mut found = None;
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                if found.is_some() {
                    return None;
                }
                found = Some((c, k));
            }
        }
        found
    }

    pub fn checked_add(&self, other: &HomPoly) -> Result<HomPoly, PolyError> {
        if self.degree != other.degree {
            return Err(PolyError::DegreeMismatch(self.degree, other.degree));
        }
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(HomPoly {
            degree: self.degree,
            coeffs,
        })
    }

    pub fn scale(&self, c: &Rational) -> HomPoly {
        HomPoly {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Split `p` of degree `a + b` as `p = x^a * R + Q * y^b` with
    /// `deg R = b`, `deg Q = a`. `R` collects the terms of `p` divisible by
    /// `x^a` (y-exponent <= b, the overlap term `x^a y^b` going to `R`),
    /// `Q` the rest.
    pub fn solve_split(&self, a: usize, b: usize) -> Result<(HomPoly, HomPoly), PolyError> {
        if self.degree != a + b {
            return Err(PolyError::DegreeMismatch(self.degree, a + b));
        }
        let mut r = HomPoly::zero(b);
        let mut q = HomPoly::zero(a);
        for (k, c) in self.coeffs.iter().enumerate() {
            if k <= b {
                // x^(a+b-k) y^k = x^a * x^(b-k) y^k
                r.coeffs[k] = c.clone();
            } else {
                // k > b, so a+b-k < a: term divisible by y^b.
                // x^(a+b-k) y^k = x^(a-(k-b)) y^(k-b) * y^b
                q.coeffs[k - b] = c.clone();
            }
        }
        Ok((r, q))
    }

    /// Exact evaluation at `(x0, y0)`.
    pub fn eval(&self, x0: &Rational, y0: &Rational) -> Rational {
        // Horner in y/x form would need x0 != 0; do it directly.
        let mut acc = Rational::zero();
        let mut xp = vec![Rational::one()];
        let mut yp = vec![Rational::one()];
        for _ in 0..self.degree {
            xp.push(xp.last().unwrap() * x0);
            yp.push(yp.last().unwrap() * y0);
        }
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                acc += c * &xp[self.degree - k] * &yp[k];
            }
        }
        acc
    }
}

impl Add for &HomPoly {
    type Output = HomPoly;
    fn add(self, other: &HomPoly) -> HomPoly {
        self.checked_add(other)
            .expect("degree mismatch in HomPoly addition")
    }
}

impl Mul for &HomPoly {
    type Output = HomPoly;
    fn mul(self, other: &HomPoly) -> HomPoly {
        let mut out = HomPoly::zero(self.degree + other.degree);
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                out.coeffs[i + j] += a * b;
            }
        }
        out
    }
}

impl Neg for &HomPoly {
    type Output = HomPoly;
    fn neg(self) -> HomPoly {
        HomPoly {
            degree: self.degree,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

fn fmt_coeff(c: &Rational, f: &mut fmt::Formatter<'_>, leading: bool, bare: bool) -> fmt::Result {
    let abs = c.abs();
    if leading {
        if c.is_negative() {
            write!(f, "-")?;
        }
    } else if c.is_negative() {
        write!(f, " - ")?;
    } else {
        write!(f, " + ")?;
    }
    if !abs.is_one() || bare {
        write!(f, "{}", abs)?;
        if !bare {
            write!(f, "*")?;
        }
    }
    Ok(())
}

impl fmt::Display for HomPoly {
    /// Signed monomial sum, e.g. `x^3*y^2 - 2*y^5`; exponent 1 and
    /// coefficient 1 elided.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut leading = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let dx = self.degree - k;
            let dy = k;
            fmt_coeff(c, f, leading, dx == 0 && dy == 0)?;
            leading = false;
            match (dx, dy) {
                (0, 0) => {}
                (1, 0) => write!(f, "x")?,
                (_, 0) => write!(f, "x^{}", dx)?,
                (0, 1) => write!(f, "y")?,
                (0, _) => write!(f, "y^{}", dy)?,
                _ => {
                    if dx == 1 {
                        write!(f, "x*")?
                    } else {
                        write!(f, "x^{}*", dx)?
                    }
                    if dy == 1 {
                        write!(f, "y")?
                    } else {
                        write!(f, "y^{}", dy)?
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;
    use proptest::prelude::*;

    fn one() -> Rational {
        Rational::one()
    }

    #[test]
    fn monomial_constructors() {
        let p = HomPoly::monomial(one(), 2, 0);
        assert_eq!(p.degree(), 2);
        assert_eq!(p.to_string(), "x^2");

        let q = HomPoly::monomial(-one(), 0, 3);
        assert_eq!(q.to_string(), "-y^3");

        let z = HomPoly::monomial(Rational::zero(), 1, 1);
        assert!(z.is_zero());
        assert_eq!(z.degree(), 2);
    }

    #[test]
    fn add_inverse_and_products() {
        let x2 = HomPoly::monomial(one(), 2, 0);
        let sum = &x2 + &(-&x2);
        assert!(sum.is_zero());
        assert_eq!(sum.degree(), 2);

        let x = HomPoly::monomial(one(), 1, 0);
        let y = HomPoly::monomial(one(), 0, 1);
        assert_eq!((&x * &y).to_string(), "x*y");

        // (x+y)(x-y) = x^2 - y^2
        let p = &x + &y;
        let q = &x + &(-&y);
        let prod = &p * &q;
        let expected = &HomPoly::monomial(one(), 2, 0) + &HomPoly::monomial(-one(), 0, 2);
        assert_eq!(prod, expected);
    }

    #[test]
    fn add_degree_mismatch_errors() {
        let x = HomPoly::monomial(one(), 1, 0);
        let x2 = HomPoly::monomial(one(), 2, 0);
        assert!(x.checked_add(&x2).is_err());
    }

    #[test]
    fn solve_split_examples() {
        // x^2 y, a=2, b=1 -> (R=y, Q=0)
        let p = HomPoly::monomial(one(), 2, 1);
        let (r, q) = p.solve_split(2, 1).unwrap();
        assert_eq!(r, HomPoly::monomial(one(), 0, 1));
        assert!(q.is_zero());

        // y^3, a=2, b=1 -> (R=0, Q=y^2)
        let p = HomPoly::monomial(one(), 0, 3);
        let (r, q) = p.solve_split(2, 1).unwrap();
        assert!(r.is_zero());
        assert_eq!(q, HomPoly::monomial(one(), 0, 2));

        // x^3 + y^3, a=2, b=1 -> (R=x, Q=y^2)
        let p = &HomPoly::monomial(one(), 3, 0) + &HomPoly::monomial(one(), 0, 3);
        let (r, q) = p.solve_split(2, 1).unwrap();
        assert_eq!(r, HomPoly::monomial(one(), 1, 0));
        assert_eq!(q, HomPoly::monomial(one(), 0, 2));
    }

    #[test]
    fn eval_examples() {
        let p = &HomPoly::monomial(one(), 2, 0) + &HomPoly::monomial(-one(), 0, 2);
        assert!(p.eval(&one(), &one()).is_zero());

        let x3 = HomPoly::monomial(one(), 3, 0);
        assert_eq!(x3.eval(&rat(2, 1), &rat(5, 1)).to_i64(), Some(8));

        let xy = HomPoly::monomial(one(), 1, 1);
        assert_eq!(xy.eval(&rat(1, 2), &rat(1, 3)), rat(1, 6));
    }

    #[test]
    fn rendering() {
        let p = &HomPoly::monomial(one(), 3, 2) + &HomPoly::monomial(rat(-2, 1), 0, 5);
        assert_eq!(p.to_string(), "x^3*y^2 - 2*y^5");
        let c = HomPoly::monomial(rat(3, 2), 0, 0);
        assert_eq!(c.to_string(), "3/2");
    }

    fn arb_poly(deg: usize) -> impl Strategy<Value = HomPoly> {
        proptest::collection::vec((-20i64..20, 1i64..5), deg + 1).prop_map(move |cs| {
            HomPoly::from_coeffs(deg, cs.into_iter().map(|(n, d)| rat(n, d)).collect()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn ring_laws(p in arb_poly(3), q in arb_poly(3), s in arb_poly(2)) {
            prop_assert_eq!(&p + &q, &q + &p);
            prop_assert_eq!(&p * &s, &s * &p);
            prop_assert_eq!(&(&p + &q) * &s, &(&p * &s) + &(&q * &s));
        }

        #[test]
        fn mul_associative(p in arb_poly(2), q in arb_poly(2), s in arb_poly(2)) {
            prop_assert_eq!(&(&p * &q) * &s, &p * &(&q * &s));
        }

        #[test]
        fn solve_split_round_trip(p in arb_poly(5)) {
            let (a, b) = (2usize, 3usize);
            let (r, q) = p.solve_split(a, b).unwrap();
            let back = &(&HomPoly::monomial(Rational::one(), a, 0) * &r)
                + &(&q * &HomPoly::monomial(Rational::one(), 0, b));
            prop_assert_eq!(back, p);
        }

        #[test]
        fn eval_is_ring_morphism(p in arb_poly(3), q in arb_poly(4)) {
            let (x0, y0) = (rat(2, 3), rat(-5, 7));
            let lhs = (&p * &q).eval(&x0, &y0);
            let rhs = p.eval(&x0, &y0) * q.eval(&x0, &y0);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
