//! Boolean functions on `2^n` points and their Walsh and bent4 spectra.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::cyclo::{add_root, width, CycInt};
use crate::error::FnError;
use crate::field::Field;
use crate::linalg::{parity, BitMatrix};
use crate::transform::{fwht, fwht_rows};

/// How an input index is read, which fixes the inner product `<b, x>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Flavor {
    /// `x = (x_1, ..., x_n)` with `x_i` = bit `i - 1`; `<b, x> = b . x`.
    Multivariate,
    /// `x` is an element of the field; `<b, x> = Tr(bx)`.
    Univariate(Field),
    /// `(x, y)` in `F_{2^m}^2` packed as `x | y << m`; `<(b1, b2), (x, y)> = Tr(b1 x) + Tr(b2 y)`.
    Bivariate(Field),
}

impl Flavor {
    /// The only admissible `n` for field flavors.
    pub fn required_n(&self) -> Option<u32> {
        match self {
            Flavor::Multivariate => None,
            Flavor::Univariate(f) => Some(f.degree()),
            Flavor::Bivariate(f) => Some(2 * f.degree()),
        }
    }

    pub fn accepts(&self, n: u32) -> bool {
        self.required_n().map_or(n <= 24, |r| r == n)
    }

    pub fn field(&self) -> Option<&Field> {
        match self {
            Flavor::Multivariate => None,
            Flavor::Univariate(f) | Flavor::Bivariate(f) => Some(f),
        }
    }

    /// The vector `v` with `<b, x> = v . x` for all `x`.
    pub fn dual_index(&self, b: u32) -> u32 {
        match self {
            Flavor::Multivariate => b,
            Flavor::Univariate(f) => f.trace_dual(b),
            Flavor::Bivariate(f) => {
                let m = f.degree();
                let mask = (1 << m) - 1;
                f.trace_dual(b & mask) | f.trace_dual(b >> m) << m
            }
        }
    }

    #[inline]
    pub fn inner(&self, b: u32, x: u32) -> u8 {
        match self {
            Flavor::Multivariate => parity(b & x),
            Flavor::Univariate(f) => f.trace(f.mul(b, x)),
            Flavor::Bivariate(f) => {
                let m = f.degree();
                let mask = (1 << m) - 1;
                f.trace(f.mul(b & mask, x & mask)) ^ f.trace(f.mul(b >> m, x >> m))
            }
        }
    }

    /// Header tag: `mv`, `uv:0x..` or `bv:0x..`.
    pub fn tag(&self) -> String {
        match self {
            Flavor::Multivariate => String::from("mv"),
            Flavor::Univariate(f) => alloc::format!("uv:{:#x}", f.poly()),
            Flavor::Bivariate(f) => alloc::format!("bv:{:#x}", f.poly()),
        }
    }
}

/// Relabel a butterfly output so that `out[b]` is the spectrum value at `b`.
pub(crate) fn relabel<T: Clone>(flavor: &Flavor, raw: &[T]) -> Vec<T> {
    match flavor {
        Flavor::Multivariate => raw.to_vec(),
        _ => (0..raw.len() as u32)
            .map(|b| raw[flavor.dual_index(b) as usize].clone())
            .collect(),
    }
}

/// `sum_x zeta_{2^level}^(e(x)) (-1)^<b, x>` for every `b`.
pub(crate) fn root_spectrum(
    n: u32,
    level: u32,
    flavor: &Flavor,
    exponent: impl Fn(u32) -> u64,
) -> Vec<CycInt> {
    let w = width(level);
    let mut rows = vec![0i64; w << n];
    for x in 0..1u32 << n {
        let at = x as usize * w;
        add_root(&mut rows[at..at + w], exponent(x), 1);
    }
    fwht_rows(&mut rows, w);
    let raw: Vec<CycInt> = rows
        .chunks_exact(w)
        .map(|r| CycInt::from_coeffs(level, r.to_vec()).expect("row width matches level"))
        .collect();
    relabel(flavor, &raw)
}

/// `s_2^c(x) = C(wt(c & x), 2) mod 2`.
#[inline]
pub fn s2_form(c: u32, x: u32) -> u8 {
    let w = (c & x).count_ones();
    ((w * w.saturating_sub(1) / 2) & 1) as u8
}

/// Walsh spectrum values indexed by `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalshSpectrum {
    values: Vec<i64>,
}

impl WalshSpectrum {
    pub fn values(&self) -> &[i64] {
        &self.values
    }

    pub fn get(&self, b: u32) -> i64 {
        self.values[b as usize]
    }

    /// `sum_b W(b)^2 = 2^(2n)`.
    pub fn parseval_holds(&self) -> bool {
        let len = self.values.len() as i64;
        self.values.iter().map(|v| v * v).sum::<i64>() == len * len
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoolFn {
    n: u32,
    table: Vec<u8>,
    flavor: Flavor,
}

impl BoolFn {
    pub fn new(n: u32, table: Vec<u8>, flavor: Flavor) -> Result<Self, FnError> {
        if !flavor.accepts(n) || table.len() != 1usize << n || table.iter().any(|&b| b > 1) {
            return Err(FnError::BadTable);
        }
        Ok(BoolFn { n, table, flavor })
    }

    pub fn from_fn(n: u32, flavor: Flavor, mut f: impl FnMut(u32) -> u8) -> Result<Self, FnError> {
        Self::new(n, (0..1u32 << n).map(|x| f(x) & 1).collect(), flavor)
    }

    pub fn zero(n: u32, flavor: Flavor) -> Result<Self, FnError> {
        Self::new(n, vec![0; 1 << n], flavor)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn flavor(&self) -> &Flavor {
        &self.flavor
    }

    pub fn table(&self) -> &[u8] {
        &self.table
    }

    #[inline]
    pub fn get(&self, x: u32) -> u8 {
        self.table[x as usize]
    }

    /// Same table read under another flavor. This is an explicit basis change.
    pub fn with_flavor(&self, flavor: Flavor) -> Result<Self, FnError> {
        Self::new(self.n, self.table.clone(), flavor)
    }

    /// Pointwise sum over GF(2).
    pub fn add(&self, other: &BoolFn) -> Result<Self, FnError> {
        if self.flavor != other.flavor || self.n != other.n {
            return Err(FnError::FlavorMismatch);
        }
        let table = self.table.iter().zip(&other.table).map(|(a, b)| a ^ b).collect();
        Ok(BoolFn { n: self.n, table, flavor: self.flavor.clone() })
    }

    pub fn weight(&self) -> usize {
        self.table.iter().filter(|&&b| b == 1).count()
    }

    pub fn is_balanced(&self) -> bool {
        2 * self.weight() == self.table.len()
    }

    pub fn walsh(&self) -> WalshSpectrum {
        let mut raw: Vec<i64> = self.table.iter().map(|&b| 1 - 2 * b as i64).collect();
        fwht(&mut raw);
        WalshSpectrum { values: relabel(&self.flavor, &raw) }
    }

    pub fn is_bent(&self) -> bool {
        if self.n % 2 == 1 {
            return false;
        }
        let r = 1i64 << (self.n / 2);
        self.walsh().values.iter().all(|v| v.abs() == r)
    }

    /// The function `g` with `W_f(b) = 2^(n/2) (-1)^g(b)`.
    pub fn dual(&self) -> Result<Self, FnError> {
        if !self.is_bent() {
            return Err(FnError::NotBent);
        }
        let table = self.walsh().values.iter().map(|&v| (v < 0) as u8).collect();
        Ok(BoolFn { n: self.n, table, flavor: self.flavor.clone() })
    }

    /// `i^(<c,x> mod 2)` together with the quadratic twist for the flavor:
    /// exponent of `i` at `x` is `2 (f(x) + q_c(x)) + l_c(x)`.
    fn bent4_exponent(&self, c: u32) -> Result<impl Fn(u32) -> u64 + '_, FnError> {
        if c == 0 {
            return Err(FnError::ZeroC);
        }
        let field = match &self.flavor {
            Flavor::Multivariate => None,
            Flavor::Univariate(f) => Some(f),
            Flavor::Bivariate(_) => return Err(FnError::FlavorMismatch),
        };
        Ok(move |x: u32| {
            let (q, l) = match field {
                None => (s2_form(c, x), parity(c & x)),
                Some(f) => (f.sigma(c, x), f.trace(f.mul(c, x))),
            };
            (2 * (self.get(x) ^ q) + l) as u64
        })
    }

    /// `U_f^c` (multivariate) or `V_f^c` (univariate), exact in `Z[i]`.
    pub fn bent4_transform(&self, c: u32) -> Result<Vec<CycInt>, FnError> {
        let e = self.bent4_exponent(c)?;
        Ok(root_spectrum(self.n, 2, &self.flavor, e))
    }

    pub fn is_cbent4(&self, c: u32) -> Result<bool, FnError> {
        let target = 1i64 << self.n;
        Ok(self.bent4_transform(c)?.iter().all(|z| z.norm_is(target)))
    }

    /// Negabent means bent4 at `c = 1` (the all-ones vector when multivariate).
    pub fn is_negabent(&self) -> Result<bool, FnError> {
        let c = match self.flavor {
            Flavor::Multivariate => (1u32 << self.n) - 1,
            _ => 1,
        };
        self.is_cbent4(c)
    }

    /// Every `f(x) + f(x + a) + c . (a * x)` (multivariate) or
    /// `f(x) + f(x + a) + Tr(c^2 a x)` (univariate) with `a != 0` is balanced.
    ///
    /// The univariate twist carries `c^2`: it is the bilinear part of
    /// `sigma(c, x) + sigma(c, x + a)`. With `Tr(cax)` the criterion only matches
    /// the transform for `c = 1`.
    pub fn bent4_derivative_balanced(&self, c: u32) -> bool {
        let f = match &self.flavor {
            Flavor::Univariate(f) => Some(f),
            Flavor::Multivariate => None,
            Flavor::Bivariate(_) => return false,
        };
        let size = 1u32 << self.n;
        (1..size).all(|a| {
            let ones = (0..size)
                .filter(|&x| {
                    let twist = match f {
                        None => parity(c & a & x),
                        Some(f) => f.trace(f.mul(f.mul(f.square(c), a), x)),
                    };
                    self.get(x) ^ self.get(x ^ a) ^ twist == 1
                })
                .count() as u32;
            2 * ones == size
        })
    }
}

/// `mu(x) = x_1 x_{m+1} + ... + x_m x_{2m}` on `n = 2m` variables.
pub fn mu(n: u32) -> Result<BoolFn, FnError> {
    if n % 2 == 1 {
        return Err(FnError::OddN(n));
    }
    let m = n / 2;
    let mask = (1u32 << m) - 1;
    BoolFn::from_fn(n, Flavor::Multivariate, |x| parity(x & mask & (x >> m)))
}

/// `q(x) = mu(xA + b) + u . x + e`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuadEquivalence {
    pub a: BitMatrix,
    pub b: u32,
    pub u: u32,
    pub e: u8,
}

impl QuadEquivalence {
    pub fn eval(&self, x: u32) -> u8 {
        let m = self.a.dim() / 2;
        let mask = (1u32 << m) - 1;
        let z = self.a.apply(x) ^ self.b;
        parity(z & mask & (z >> m)) ^ parity(self.u & x) ^ self.e
    }
}

/// Affine equivalence of a nondegenerate quadratic to `mu`, by greedy
/// symplectic reduction of `B(x, y) = q(x + y) + q(x) + q(y) + q(0)`.
/// The table is read as a function of the bit vector `x` whatever the flavor.
pub fn quad_equiv_to_mu(q: &BoolFn) -> Result<QuadEquivalence, FnError> {
    let n = q.n();
    if n % 2 == 1 {
        return Err(FnError::OddN(n));
    }
    let m = n / 2;
    let form = |x: u32, y: u32| q.get(x ^ y) ^ q.get(x) ^ q.get(y) ^ q.get(0);

    let mut rest: Vec<u32> = (0..n).map(|i| 1 << i).collect();
    let mut es = Vec::with_capacity(m as usize);
    let mut fs = Vec::with_capacity(m as usize);
    while !rest.is_empty() {
        let e = rest.remove(0);
        let pos = rest
            .iter()
            .position(|&v| form(e, v) == 1)
            .ok_or(FnError::DegenerateForm)?;
        let f = rest.remove(pos);
        for v in rest.iter_mut() {
            let (bf, be) = (form(*v, f), form(*v, e));
            if bf == 1 {
                *v ^= e;
            }
            if be == 1 {
                *v ^= f;
            }
        }
        es.push(e);
        fs.push(f);
    }

    let rows = (0..n)
        .map(|i| {
            (0..m).fold(0u32, |acc, j| {
                acc | (form(1 << i, fs[j as usize]) as u32) << j
                    | (form(1 << i, es[j as usize]) as u32) << (m + j)
            })
        })
        .collect();
    let mut eq = QuadEquivalence { a: BitMatrix::from_rows(n, rows), b: 0, u: 0, e: q.get(0) };
    let u = (0..n).fold(0u32, |acc, r| acc | ((q.get(1 << r) ^ eq.eval(1 << r)) as u32) << r);
    eq.u = u;
    if !eq.a.is_invertible() || (0..1u32 << n).any(|x| eq.eval(x) != q.get(x)) {
        return Err(FnError::NotQuadratic);
    }
    Ok(eq)
}
