//! Exact arithmetic in `Z[zeta]` for `zeta` a primitive `2^K`-th root of unity.
//!
//! An element is stored as `2^(K-1)` integer coefficients on the power basis
//! `1, zeta, ..., zeta^(2^(K-1) - 1)`, reduced by `zeta^(2^(K-1)) = -1`.
//! Every spectrum in this crate is a vector of such elements; flatness is
//! checked as the ring identity `z * conj(z) = 2^n`.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use core::str::FromStr;

use crate::error::CycError;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycInt {
    level: u32,
    coeffs: Vec<i64>,
}

#[inline]
pub(crate) fn width(level: u32) -> usize {
    1usize << (level - 1)
}

impl CycInt {
    pub fn zero(level: u32) -> Self {
        assert!(level >= 1, "cyclotomic level must be at least 1");
        CycInt {
            level,
            coeffs: vec![0; width(level)],
        }
    }

    pub fn constant(level: u32, value: i64) -> Self {
        let mut z = Self::zero(level);
        z.coeffs[0] = value;
        z
    }

    pub fn one(level: u32) -> Self {
        Self::constant(level, 1)
    }

    /// `zeta_{2^K}^e`, with `e` reduced mod `2^K`.
    pub fn root_power(level: u32, e: i64) -> Self {
        let mut z = Self::zero(level);
        let w = width(level) as i64;
        let e = e.rem_euclid(2 * w);
        if e < w {
            z.coeffs[e as usize] = 1;
        } else {
            z.coeffs[(e - w) as usize] = -1;
        }
        z
    }

    /// Build from raw coefficients; the length must be `2^(K-1)`.
    pub fn from_coeffs(level: u32, coeffs: Vec<i64>) -> Result<Self, CycError> {
        if level == 0 || coeffs.len() != width(level) {
            return Err(CycError::Syntax);
        }
        Ok(CycInt { level, coeffs })
    }

    #[inline]
    pub fn level(&self) -> u32 {
        self.level
    }

    #[inline]
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The integer value, if the element is a rational integer.
    pub fn as_integer(&self) -> Option<i64> {
        if self.coeffs[1..].iter().all(|&c| c == 0) {
            Some(self.coeffs[0])
        } else {
            None
        }
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, CycError> {
        if self.level != other.level {
            return Err(CycError::LevelMismatch {
                left: self.level,
                right: other.level,
            });
        }
        let w = self.coeffs.len();
        let mut out = vec![0i64; w];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                let t = a.checked_mul(b).expect("cyclotomic coefficient overflow");
                let k = i + j;
                if k < w {
                    out[k] += t;
                } else {
                    out[k - w] -= t;
                }
            }
        }
        Ok(CycInt {
            level: self.level,
            coeffs: out,
        })
    }

    /// Complex conjugate: `zeta^j -> zeta^(-j)`.
    pub fn conj(&self) -> Self {
        let w = self.coeffs.len();
        let mut out = vec![0i64; w];
        out[0] = self.coeffs[0];
        for j in 1..w {
            out[w - j] = -self.coeffs[j];
        }
        CycInt {
            level: self.level,
            coeffs: out,
        }
    }

    /// `|z|^2 = z * conj(z)`, an element fixed by conjugation.
    pub fn norm_sq(&self) -> Self {
        self.try_mul(&self.conj()).expect("same level")
    }

    /// `|z|^2` when it is a rational integer; `None` otherwise (e.g. `|2 + sqrt 2|^2`).
    pub fn norm_sq_integer(&self) -> Option<i64> {
        self.norm_sq().as_integer()
    }

    /// True iff `z * conj(z)` equals the integer `target`.
    pub fn norm_is(&self, target: i64) -> bool {
        let n = self.norm_sq();
        n.coeffs[0] == target && n.coeffs[1..].iter().all(|&c| c == 0)
    }

    /// Embed into level `k2 >= K` via `zeta_{2^K} -> zeta_{2^k2}^(2^(k2-K))`.
    pub fn lift(&self, k2: u32) -> Result<Self, CycError> {
        if k2 < self.level {
            return Err(CycError::LevelMismatch {
                left: self.level,
                right: k2,
            });
        }
        let step = 1usize << (k2 - self.level);
        let mut out = vec![0i64; width(k2)];
        for (j, &c) in self.coeffs.iter().enumerate() {
            out[j * step] = c;
        }
        Ok(CycInt {
            level: k2,
            coeffs: out,
        })
    }

    /// Text form `K=<int>;[c0,c1,...]`.
    pub fn to_text(&self) -> String {
        alloc::format!("{self}")
    }
}

impl fmt::Debug for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for CycInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "K={};[", self.level)?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("]")
    }
}

impl FromStr for CycInt {
    type Err = CycError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let rest = s.strip_prefix("K=").ok_or(CycError::Syntax)?;
        let (level, list) = rest.split_once(';').ok_or(CycError::Syntax)?;
        let level: u32 = level.trim().parse().map_err(|_| CycError::Syntax)?;
        let list = list
            .trim()
            .strip_prefix('[')
            .and_then(|l| l.strip_suffix(']'))
            .ok_or(CycError::Syntax)?;
        let coeffs = list
            .split(',')
            .map(|c| c.trim().parse::<i64>().map_err(|_| CycError::Syntax))
            .collect::<Result<Vec<_>, _>>()?;
        CycInt::from_coeffs(level, coeffs)
    }
}

fn assert_same_level(a: &CycInt, b: &CycInt) {
    assert_eq!(a.level, b.level, "cyclotomic level mismatch");
}

impl AddAssign<&CycInt> for CycInt {
    fn add_assign(&mut self, rhs: &CycInt) {
        assert_same_level(self, rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
    }
}

impl SubAssign<&CycInt> for CycInt {
    fn sub_assign(&mut self, rhs: &CycInt) {
        assert_same_level(self, rhs);
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
    }
}

impl Add for &CycInt {
    type Output = CycInt;
    fn add(self, rhs: &CycInt) -> CycInt {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &CycInt {
    type Output = CycInt;
    fn sub(self, rhs: &CycInt) -> CycInt {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Neg for &CycInt {
    type Output = CycInt;
    fn neg(self) -> CycInt {
        CycInt {
            level: self.level,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// Panics on a level mismatch; use [`CycInt::try_mul`] to get an error instead.
impl Mul for &CycInt {
    type Output = CycInt;
    fn mul(self, rhs: &CycInt) -> CycInt {
        self.try_mul(rhs).expect("cyclotomic level mismatch")
    }
}

/// Exponent accumulator for sums of roots of unity: `zeta_{2^K}^e` added into a
/// flat coefficient row of width `2^(K-1)`.
#[inline]
pub(crate) fn add_root(row: &mut [i64], e: u64, sign: i64) {
    let w = row.len() as u64;
    let e = e % (2 * w);
    if e < w {
        row[e as usize] += sign;
    } else {
        row[(e - w) as usize] -= sign;
    }
}
