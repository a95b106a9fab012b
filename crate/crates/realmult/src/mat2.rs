//! Exact 2x2 integer matrices, Smith normal form, and the kernel/cokernel
//! computations the K-theory exact sequence reduces to.
//!
//! Matrices act on column vectors. All entries are arbitrary-precision
//! integers; nothing here can overflow.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::abelian::AbelianGroup;
use crate::error::{Error, Result};

/// A 2x2 integer matrix (a b; c d), row major.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl Mat2 {
    pub fn new<T: Into<BigInt>>(a: T, b: T, c: T, d: T) -> Self {
        Mat2 {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        }
    }

    pub fn identity() -> Self {
        Mat2::new(1, 0, 0, 1)
    }

    pub fn zero() -> Self {
        Mat2::new(0, 0, 0, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero() && self.c.is_zero() && self.d.is_zero()
    }

    /// Determinant ad - bc.
    pub fn det(&self) -> BigInt {
        &self.a * &self.d - &self.b * &self.c
    }

    pub fn trace(&self) -> BigInt {
        &self.a + &self.d
    }

    pub fn transpose(&self) -> Mat2 {
        Mat2 {
            a: self.a.clone(),
            b: self.c.clone(),
            c: self.b.clone(),
            d: self.d.clone(),
        }
    }

    /// Matrix product self * rhs.
    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        Mat2 {
            a: &self.a * &rhs.a + &self.b * &rhs.c,
            b: &self.a * &rhs.b + &self.b * &rhs.d,
            c: &self.c * &rhs.a + &self.d * &rhs.c,
            d: &self.c * &rhs.b + &self.d * &rhs.d,
        }
    }

    pub fn neg(&self) -> Mat2 {
        Mat2 {
            a: -&self.a,
            b: -&self.b,
            c: -&self.c,
            d: -&self.d,
        }
    }

    pub fn sub(&self, rhs: &Mat2) -> Mat2 {
        Mat2 {
            a: &self.a - &rhs.a,
            b: &self.b - &rhs.b,
            c: &self.c - &rhs.c,
            d: &self.d - &rhs.d,
        }
    }

    pub fn is_unimodular(&self) -> bool {
        self.det().abs().is_one()
    }

    /// Exact inverse of a matrix with determinant +-1.
    pub fn inverse_unimodular(&self) -> Result<Mat2> {
        let det = self.det();
        if det.is_one() {
            Ok(Mat2 {
                a: self.d.clone(),
                b: -&self.b,
                c: -&self.c,
                d: self.a.clone(),
            })
        } else if (-&det).is_one() {
            Ok(Mat2 {
                a: -&self.d,
                b: self.b.clone(),
                c: self.c.clone(),
                d: -&self.a,
            })
        } else {
            Err(Error::NotUnimodular { determinant: det })
        }
    }

    /// gcd of all four entries (0 for the zero matrix).
    pub fn entry_gcd(&self) -> BigInt {
        self.a.gcd(&self.b).gcd(&self.c).gcd(&self.d)
    }

    /// Smith normal form U * self * V = S with unimodular U, V and
    /// S = diag(d1, d2), d1, d2 >= 0, d1 | d2.
    ///
    /// Gcd-driven elimination; the pivot is always the entry of smallest
    /// nonzero absolute value (row-major tie break), so the transforms are
    /// reproducible.
    pub fn smith_normal_form(&self) -> SmithForm {
        let mut s = self.clone();
        let mut u = Mat2::identity();
        let mut v = Mat2::identity();

        // Invariant: u * self * v == s after every elementary step. The
        // pivot search returns None only for the zero matrix.
        while let Some((i, j)) = pivot_position(&s) {
            if i == 1 {
                s.swap_rows();
                u.swap_rows();
            }
            if j == 1 {
                s.swap_cols();
                v.swap_cols();
            }
            // Shrink the lower-left entry; the remainder becomes the next pivot.
            if !(&s.c % &s.a).is_zero() {
                let q = &s.c / &s.a;
                s.row1_sub_q_row0(&q);
                u.row1_sub_q_row0(&q);
                continue;
            }
            if !(&s.b % &s.a).is_zero() {
                let q = &s.b / &s.a;
                s.col1_sub_q_col0(&q);
                v.col1_sub_q_col0(&q);
                continue;
            }
            let q = &s.c / &s.a;
            s.row1_sub_q_row0(&q);
            u.row1_sub_q_row0(&q);
            let q = &s.b / &s.a;
            s.col1_sub_q_col0(&q);
            v.col1_sub_q_col0(&q);
            // Diagonal now; enforce d1 | d2 by folding d into the pivot row.
            if !(&s.d % &s.a).is_zero() {
                s.row0_add_row1();
                u.row0_add_row1();
                continue;
            }
            break;
        }

        if s.a.is_negative() {
            s.negate_row0();
            u.negate_row0();
        }
        if s.d.is_negative() {
            s.negate_row1();
            u.negate_row1();
        }
        if s.a.is_zero() && !s.d.is_zero() {
            s.swap_rows();
            u.swap_rows();
            s.swap_cols();
            v.swap_cols();
        }

        debug_assert!(s.b.is_zero() && s.c.is_zero());
        SmithForm { u, s, v }
    }

    /// Z^2 / Im(self) in canonical form.
    pub fn cokernel(&self) -> AbelianGroup {
        let snf = self.smith_normal_form();
        let mut free_rank = 0;
        let mut torsion = Vec::new();
        for entry in [&snf.s.a, &snf.s.d] {
            if entry.is_zero() {
                free_rank += 1;
            } else if !entry.is_one() {
                torsion.push(entry.clone());
            }
        }
        AbelianGroup::new(free_rank, torsion)
    }

    /// Rank of the kernel of self acting on Z^2, i.e. 2 - rank(self).
    pub fn kernel_rank(&self) -> usize {
        let snf = self.smith_normal_form();
        [&snf.s.a, &snf.s.d]
            .iter()
            .filter(|entry| entry.is_zero())
            .count()
    }

    fn swap_rows(&mut self) {
        std::mem::swap(&mut self.a, &mut self.c);
        std::mem::swap(&mut self.b, &mut self.d);
    }

    fn swap_cols(&mut self) {
        std::mem::swap(&mut self.a, &mut self.b);
        std::mem::swap(&mut self.c, &mut self.d);
    }

    fn row1_sub_q_row0(&mut self, q: &BigInt) {
        self.c -= q * &self.a;
        self.d -= q * &self.b;
    }

    fn col1_sub_q_col0(&mut self, q: &BigInt) {
        self.b -= q * &self.a;
        self.d -= q * &self.c;
    }

    fn row0_add_row1(&mut self) {
        self.a += &self.c;
        self.b += &self.d;
    }

    fn negate_row0(&mut self) {
        self.a = -&self.a;
        self.b = -&self.b;
    }

    fn negate_row1(&mut self) {
        self.c = -&self.c;
        self.d = -&self.d;
    }
}

/// Entry of smallest nonzero absolute value, ties broken row-major.
fn pivot_position(m: &Mat2) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for (pos, entry) in [
        ((0, 0), &m.a),
        ((0, 1), &m.b),
        ((1, 0), &m.c),
        ((1, 1), &m.d),
    ] {
        if entry.is_zero() {
            continue;
        }
        let mag = entry.abs();
        match &best {
            Some((_, current)) if *current <= mag => {}
            _ => best = Some((pos, mag)),
        }
    }
    best.map(|(pos, _)| pos)
}

/// The decomposition U * A * V = S of a [`Mat2`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    pub u: Mat2,
    pub s: Mat2,
    pub v: Mat2,
}

impl SmithForm {
    pub fn d1(&self) -> &BigInt {
        &self.s.a
    }

    pub fn d2(&self) -> &BigInt {
        &self.s.d
    }
}

impl fmt::Display for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{};{},{})", self.a, self.b, self.c, self.d)
    }
}

impl FromStr for Mat2 {
    type Err = Error;

    /// Parses row-major "a,b;c,d"; whitespace is ignored.
    fn from_str(s: &str) -> Result<Mat2> {
        let compact: String = s.chars().filter(|ch| !ch.is_whitespace()).collect();
        let bad = || Error::ParseInput(format!("expected \"a,b;c,d\", got {s:?}"));
        let mut rows = compact.split(';');
        let row0 = rows.next().ok_or_else(bad)?;
        let row1 = rows.next().ok_or_else(bad)?;
        if rows.next().is_some() {
            return Err(bad());
        }
        let parse_row = |row: &str| -> Result<(BigInt, BigInt)> {
            let mut cells = row.split(',');
            let x = cells.next().ok_or_else(bad)?;
            let y = cells.next().ok_or_else(bad)?;
            if cells.next().is_some() {
                return Err(bad());
            }
            Ok((
                BigInt::from_str(x).map_err(|_| bad())?,
                BigInt::from_str(y).map_err(|_| bad())?,
            ))
        };
        let (a, b) = parse_row(row0)?;
        let (c, d) = parse_row(row1)?;
        Ok(Mat2 { a, b, c, d })
    }
}
