//! Exact arithmetic for real quadratic irrationals.
//!
//! A [`QuadraticIrrational`] is the root theta = (-l + sqrt(D))/(2k) of the
//! normalized equation k theta^2 + l theta + m = 0 with k >= 1,
//! gcd(k,l,m) = 1 and discriminant D = l^2 - 4km positive and nonsquare.
//! The triple determines the number and vice versa; the conjugate root
//! (-l - sqrt(D))/(2k) is only ever handled as a [`Surd`].
//!
//! A [`Surd`] is a number (P + sqrt(D))/Q with Q | D - P^2, the working
//! representation for continued-fraction states and trace values. Floors and
//! comparisons bracket sqrt(D) between consecutive integers; no floating
//! point is involved anywhere.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::mat2::Mat2;

/// True iff n = r^2 for some integer r.
pub(crate) fn is_perfect_square(n: &BigInt) -> bool {
    if n.is_negative() {
        return false;
    }
    let root = n.sqrt();
    &root * &root == *n
}

/// Exact sign of x + y*sqrt(d) for d > 0 nonsquare.
pub(crate) fn sign_x_plus_y_sqrt_d(x: &BigInt, y: &BigInt, d: &BigInt) -> Ordering {
    debug_assert!(d.is_positive() && !is_perfect_square(d));
    match (x.sign(), y.sign()) {
        (_, num_bigint::Sign::NoSign) => x.cmp(&BigInt::zero()),
        (num_bigint::Sign::NoSign, _) => y.cmp(&BigInt::zero()),
        (num_bigint::Sign::Plus, num_bigint::Sign::Plus) => Ordering::Greater,
        (num_bigint::Sign::Minus, num_bigint::Sign::Minus) => Ordering::Less,
        // Opposite signs: compare x^2 with y^2 d; equality cannot occur
        // because sqrt(d) is irrational.
        (num_bigint::Sign::Plus, num_bigint::Sign::Minus) => (x * x).cmp(&(y * y * d)),
        (num_bigint::Sign::Minus, num_bigint::Sign::Plus) => (y * y * d).cmp(&(x * x)),
    }
}

/// The quadratic irrational (P + sqrt(D))/Q with D > 0 nonsquare, Q != 0
/// and Q | D - P^2.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Surd {
    p: BigInt,
    q: BigInt,
    d: BigInt,
}

impl Surd {
    /// Builds (p + sqrt(d))/q, checking the representation invariants.
    pub fn new(p: BigInt, q: BigInt, d: BigInt) -> Surd {
        assert!(!q.is_zero(), "surd denominator is zero");
        assert!(
            d.is_positive() && !is_perfect_square(&d),
            "surd radicand {d} must be positive and nonsquare"
        );
        assert!(
            ((&d - &p * &p) % &q).is_zero(),
            "surd invariant Q | D - P^2 violated: ({p} + sqrt({d}))/{q}"
        );
        Surd { p, q, d }
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    /// Exact floor. sqrt(D) lies strictly between s and s+1 for
    /// s = isqrt(D), so (P + sqrt(D))/Q lies strictly between integers
    /// that one floor division resolves, for either sign of Q.
    pub fn floor(&self) -> BigInt {
        let s = self.d.sqrt();
        if self.q.is_positive() {
            (&self.p + s).div_floor(&self.q)
        } else {
            (-&self.p - s - BigInt::one()).div_floor(&-&self.q)
        }
    }

    /// self - n.
    pub fn sub_int(&self, n: &BigInt) -> Surd {
        Surd::new(&self.p - n * &self.q, self.q.clone(), self.d.clone())
    }

    /// 1/self. The reciprocal stays in the family: the new denominator is
    /// (D - P^2)/Q, an integer by the invariant.
    pub fn recip(&self) -> Surd {
        let q_next = (&self.d - &self.p * &self.p) / &self.q;
        Surd::new(-&self.p, q_next, self.d.clone())
    }

    /// Rescales to (nP + sqrt(n^2 D))/(nQ) for n > 0; the value is unchanged.
    pub fn scale(&self, n: &BigInt) -> Surd {
        assert!(n.is_positive());
        Surd::new(n * &self.p, n * &self.q, n * n * &self.d)
    }

    /// Exact comparison against an integer.
    pub fn cmp_int(&self, n: &BigInt) -> Ordering {
        // (P + sqrt(D))/Q - n has the sign of (P - nQ) + sqrt(D), times sign(Q).
        let x = &self.p - n * &self.q;
        let sign = sign_x_plus_y_sqrt_d(&x, &BigInt::one(), &self.d);
        if self.q.is_positive() {
            sign
        } else {
            sign.reverse()
        }
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + sqrt({}))/{}", self.p, self.d, self.q)
    }
}

/// The root theta = (-l + sqrt(D))/(2k) of k x^2 + l x + m = 0, in lowest
/// terms with k >= 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticIrrational {
    k: BigInt,
    l: BigInt,
    m: BigInt,
}

impl QuadraticIrrational {
    /// Normalizes (k,l,m) by the gcd and the sign of k, then checks that the
    /// discriminant is positive and nonsquare. The equation of a quadratic
    /// irrational is uniquely determined, so this is a canonical form.
    pub fn new<T: Into<BigInt>>(k: T, l: T, m: T) -> Result<QuadraticIrrational> {
        let mut k: BigInt = k.into();
        let mut l: BigInt = l.into();
        let mut m: BigInt = m.into();
        if k.is_zero() {
            return Err(Error::ZeroLeadingCoefficient);
        }
        let g = k.gcd(&l).gcd(&m);
        k /= &g;
        l /= &g;
        m /= &g;
        if k.is_negative() {
            k = -k;
            l = -l;
            m = -m;
        }
        let disc = &l * &l - BigInt::from(4) * &k * &m;
        if !disc.is_positive() || is_perfect_square(&disc) {
            return Err(Error::NotIrrational { discriminant: disc });
        }
        Ok(QuadraticIrrational { k, l, m })
    }

    pub fn k(&self) -> &BigInt {
        &self.k
    }

    pub fn l(&self) -> &BigInt {
        &self.l
    }

    pub fn m(&self) -> &BigInt {
        &self.m
    }

    /// D = l^2 - 4km.
    pub fn discriminant(&self) -> BigInt {
        &self.l * &self.l - BigInt::from(4) * &self.k * &self.m
    }

    /// The number itself as a surd (-l + sqrt(D))/(2k).
    pub fn to_surd(&self) -> Surd {
        Surd::new(-&self.l, BigInt::from(2) * &self.k, self.discriminant())
    }

    /// The algebraic conjugate (-l - sqrt(D))/(2k), representable as a surd
    /// with negative denominator.
    pub fn conjugate_surd(&self) -> Surd {
        Surd::new(
            self.l.clone(),
            BigInt::from(-2) * &self.k,
            self.discriminant(),
        )
    }

    /// Recovers the normalized triple from a surd with positive denominator.
    /// The value (P + sqrt(D))/Q satisfies Qx^2 - 2Px + (P^2-D)/Q = 0 and is
    /// the larger root exactly when Q > 0.
    pub(crate) fn from_surd(surd: &Surd) -> QuadraticIrrational {
        assert!(
            surd.q.is_positive(),
            "surd {surd} denotes the smaller root; no normalized triple exists"
        );
        let m = (&surd.p * &surd.p - &surd.d) / &surd.q;
        QuadraticIrrational::new(surd.q.clone(), BigInt::from(-2) * &surd.p, m)
            .expect("a surd always determines a quadratic irrational")
    }

    pub fn floor(&self) -> BigInt {
        self.to_surd().floor()
    }

    /// True iff 0 < theta < 1.
    pub fn is_in_unit_interval(&self) -> bool {
        self.floor().is_zero()
    }

    /// The value c*theta + d as a surd; c must be nonzero (otherwise the
    /// value is rational and leaves the surd family).
    pub fn eval_linear(&self, c: &BigInt, d: &BigInt) -> Surd {
        assert!(!c.is_zero(), "c*theta + d is rational for c = 0");
        // c theta + d = ((2kd - cl) + c sqrt(D)) / (2k); pull |c| into the
        // radicand to normalize the sqrt coefficient to one.
        let two_k = BigInt::from(2) * &self.k;
        let p = &two_k * d - &self.l * c;
        let disc = self.discriminant();
        if c.is_positive() {
            Surd::new(p, two_k, c * c * disc)
        } else {
            Surd::new(-p, -two_k, c * c * disc)
        }
    }

    /// Translates theta into (0,1) and returns the translation.
    ///
    /// The returned matrix g = (1, -floor(theta); 0, 1) satisfies
    /// moebius_act(g, theta) = theta - floor(theta).
    pub fn normalize_to_unit_interval(&self) -> (QuadraticIrrational, Mat2) {
        let f = self.floor();
        let g = Mat2 {
            a: BigInt::one(),
            b: -&f,
            c: BigInt::zero(),
            d: BigInt::one(),
        };
        let shifted = moebius_act(&g, self).expect("translations are unimodular");
        debug_assert!(shifted.is_in_unit_interval());
        (shifted, g)
    }
}

impl fmt::Display for QuadraticIrrational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({} + sqrt({}))/{}",
            -&self.l,
            self.discriminant(),
            BigInt::from(2) * &self.k
        )
    }
}

/// The Moebius action (a theta + b)/(c theta + d) of g = (a,b;c,d) in
/// GL(2,Z), as the normalized quadratic irrational with the image's minimal
/// equation.
///
/// Substituting theta = g^{-1} theta' into the equation of theta and
/// clearing denominators gives the image's equation directly; the
/// discriminant is unchanged. The normalized triple denotes the larger root
/// of that equation, which is the image itself whenever the image exceeds
/// its conjugate (the case for every stabilizer and every
/// continued-fraction witness).
pub fn moebius_act(g: &Mat2, theta: &QuadraticIrrational) -> Result<QuadraticIrrational> {
    if !g.is_unimodular() {
        return Err(Error::NotUnimodular {
            determinant: g.det(),
        });
    }
    let (k, l, m) = (&theta.k, &theta.l, &theta.m);
    let (a, b, c, d) = (&g.a, &g.b, &g.c, &g.d);
    let k_new = k * d * d - l * c * d + m * c * c;
    let l_new = BigInt::from(-2) * k * b * d + l * (a * d + b * c) - BigInt::from(2) * m * a * c;
    let m_new = k * b * b - l * a * b + m * a * a;
    QuadraticIrrational::new(k_new, l_new, m_new)
}
