//! Arithmetic in GF(2^m) for 2 <= m <= 16.
//!
//! Elements are `u32` values below `2^m`, read as coefficient vectors in the
//! polynomial basis `{1, x, ..., x^(m-1)}`. A [`Field`] owns exp/log tables
//! together with trace and `sigma(1, .)` tables, and is cheap to clone.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::FieldError;

/// Smallest (by integer encoding) irreducible polynomial for each degree 2..=16.
///
/// Registry version 1. Index `m - 2` holds the polynomial of degree `m`.
pub const DEFAULT_POLYS: [u32; 15] = [
    0x7, 0xb, 0x13, 0x25, 0x43, 0x83, 0x11b, 0x203, 0x409, 0x805, 0x1009, 0x201b, 0x4021,
    0x8003, 0x1002b,
];

/// Version tag of [`DEFAULT_POLYS`].
pub const REGISTRY_VERSION: u32 = 1;

pub const MIN_DEGREE: u32 = 2;
pub const MAX_DEGREE: u32 = 16;

/// Registry polynomial for degree `m`.
pub fn default_poly(m: u32) -> Option<u32> {
    if (MIN_DEGREE..=MAX_DEGREE).contains(&m) {
        Some(DEFAULT_POLYS[(m - MIN_DEGREE) as usize])
    } else {
        None
    }
}

/// Carry-less product of `a` and `b` reduced modulo `poly` (degree `m`).
pub fn clmul_mod(a: u32, b: u32, poly: u32, m: u32) -> u32 {
    let mut acc = 0u32;
    let mut a = a;
    let mut b = b;
    while b != 0 {
        if b & 1 == 1 {
            acc ^= a;
        }
        b >>= 1;
        a <<= 1;
        if (a >> m) & 1 == 1 {
            a ^= poly;
        }
    }
    acc
}

fn poly_degree(p: u64) -> i32 {
    63 - p.leading_zeros() as i32
}

fn poly_gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        while a != 0 && poly_degree(a) >= poly_degree(b) {
            a ^= b << (poly_degree(a) - poly_degree(b));
        }
        core::mem::swap(&mut a, &mut b);
    }
    a
}

/// Rabin-style test: `gcd(x^(2^i) + x, poly) = 1` for `1 <= i <= m/2`.
pub fn is_irreducible(poly: u32, m: u32) -> bool {
    if m == 0 || poly >> m != 1 || poly & 1 == 0 {
        return false;
    }
    let x = 2u32;
    let mut t = x;
    for _ in 1..=m / 2 {
        t = clmul_mod(t, t, poly, m);
        if poly_gcd(u64::from(poly), u64::from(t ^ x)) != 1 {
            return false;
        }
    }
    true
}

fn prime_factors(mut v: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= v {
        if v.is_multiple_of(p) {
            out.push(p);
            while v.is_multiple_of(p) {
                v /= p;
            }
        }
        p += 1;
    }
    if v > 1 {
        out.push(v);
    }
    out
}

struct Tables {
    m: u32,
    poly: u32,
    generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    trace: Vec<u8>,
    sigma: Vec<u8>,
    trace_dual: Vec<u32>,
}

/// A concrete model of GF(2^m).
#[derive(Clone)]
pub struct Field {
    inner: Arc<Tables>,
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.inner.m == other.inner.m && self.inner.poly == other.inner.poly
    }
}

impl Eq for Field {}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Field({})", self)
    }
}

/// Text form `m=<int>,poly=0x<hex>`.
impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m={},poly=0x{:x}", self.inner.m, self.inner.poly)
    }
}

impl Field {
    /// GF(2^m) over the registry polynomial.
    pub fn new(m: u32) -> Result<Self, FieldError> {
        let poly = default_poly(m).ok_or(FieldError::DegreeOutOfRange(m))?;
        Self::with_poly(m, poly)
    }

    /// GF(2^m) over a caller-supplied irreducible polynomial.
    pub fn with_poly(m: u32, poly: u32) -> Result<Self, FieldError> {
        if !(MIN_DEGREE..=MAX_DEGREE).contains(&m) {
            return Err(FieldError::DegreeOutOfRange(m));
        }
        if poly >> m != 1 || poly & 1 == 0 {
            return Err(FieldError::BadPolynomial { m, poly });
        }
        if !is_irreducible(poly, m) {
            return Err(FieldError::Reducible { m, poly });
        }
        let size = 1usize << m;
        let order = (size - 1) as u32;
        let factors = prime_factors(order);
        let pow_slow = |g: u32, e: u32| {
            let (mut acc, mut base, mut e) = (1u32, g, e);
            while e > 0 {
                if e & 1 == 1 {
                    acc = clmul_mod(acc, base, poly, m);
                }
                base = clmul_mod(base, base, poly, m);
                e >>= 1;
            }
            acc
        };
        let generator = (2..size as u32)
            .find(|&g| factors.iter().all(|&p| pow_slow(g, order / p) != 1))
            .unwrap_or(1);

        let mut exp = vec![0u32; 2 * size];
        let mut log = vec![0u32; size];
        let mut e = 1u32;
        for i in 0..order as usize {
            exp[i] = e;
            log[e as usize] = i as u32;
            e = clmul_mod(e, generator, poly, m);
        }
        for i in order as usize..2 * size {
            exp[i] = exp[i - order as usize];
        }

        let mut tables = Tables {
            m,
            poly,
            generator,
            exp,
            log,
            trace: Vec::new(),
            sigma: Vec::new(),
            trace_dual: Vec::new(),
        };
        let mut trace = vec![0u8; size];
        let mut sigma = vec![0u8; size];
        for x in 0..size as u32 {
            let (t, s) = trace_and_e2(&tables, x);
            trace[x as usize] = t;
            sigma[x as usize] = s;
        }
        tables.trace = trace;
        tables.sigma = sigma;
        let mut dual = vec![0u32; size];
        for (b, slot) in dual.iter_mut().enumerate() {
            let mut v = 0;
            for i in 0..m {
                let prod = table_mul(&tables, b as u32, 1 << i);
                v |= u32::from(tables.trace[prod as usize]) << i;
            }
            *slot = v;
        }
        tables.trace_dual = dual;
        Ok(Field {
            inner: Arc::new(tables),
        })
    }

    /// Parse the text form `m=<int>[,poly=0x<hex>]`.
    pub fn parse(text: &str) -> Result<Self, FieldError> {
        let mut m = None;
        let mut poly = None;
        for part in text.split(',') {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (key, value) = part
                .split_once('=')
                .ok_or(FieldError::Syntax)?;
            match key.trim() {
                "m" => m = Some(value.trim().parse::<u32>().map_err(|_| FieldError::Syntax)?),
                "poly" => {
                    let v = value.trim();
                    let v = v.strip_prefix("0x").or_else(|| v.strip_prefix("0X")).unwrap_or(v);
                    poly = Some(u32::from_str_radix(v, 16).map_err(|_| FieldError::Syntax)?);
                }
                _ => return Err(FieldError::Syntax),
            }
        }
        let m = m.ok_or(FieldError::Syntax)?;
        match poly {
            Some(p) => Self::with_poly(m, p),
            None => Self::new(m),
        }
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.inner.m
    }

    #[inline]
    pub fn poly(&self) -> u32 {
        self.inner.poly
    }

    /// Smallest primitive element.
    #[inline]
    pub fn generator(&self) -> u32 {
        self.inner.generator
    }

    #[inline]
    pub fn size(&self) -> usize {
        1 << self.inner.m
    }

    /// `2^m - 1`.
    #[inline]
    pub fn order(&self) -> u32 {
        (1u32 << self.inner.m) - 1
    }

    #[inline]
    pub fn elements(&self) -> core::ops::Range<u32> {
        0..(1u32 << self.inner.m)
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        table_mul(&self.inner, a, b)
    }

    #[inline]
    pub fn square(&self, a: u32) -> u32 {
        self.mul(a, a)
    }

    /// Multiplicative inverse; zero has none.
    pub fn inv(&self, a: u32) -> Result<u32, FieldError> {
        if a == 0 {
            return Err(FieldError::ZeroInversion);
        }
        let t = &self.inner;
        let l = t.log[a as usize];
        Ok(t.exp[((self.order() - l) % self.order()) as usize])
    }

    /// `a^(-1)` with the convention `0 -> 0`.
    #[inline]
    pub fn inv_or_zero(&self, a: u32) -> u32 {
        self.inv(a).unwrap_or(0)
    }

    /// `a^e` for a non-negative exponent, with `0^0 = 1`.
    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let t = &self.inner;
        let l = u64::from(t.log[a as usize]);
        t.exp[((l * (e % u64::from(self.order()))) % u64::from(self.order())) as usize]
    }

    /// `g^i` for the stored generator `g`.
    #[inline]
    pub fn exp(&self, i: u64) -> u32 {
        self.inner.exp[(i % u64::from(self.order())) as usize]
    }

    /// Discrete logarithm to the stored generator.
    pub fn log(&self, a: u32) -> Option<u32> {
        if a == 0 {
            None
        } else {
            Some(self.inner.log[a as usize])
        }
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, a: u32) -> Option<u32> {
        let l = self.log(a)?;
        let q = self.order();
        Some(q / gcd(q, l))
    }

    /// Absolute trace `Tr(x) = sum x^(2^i)`.
    #[inline]
    pub fn trace(&self, x: u32) -> u8 {
        self.inner.trace[x as usize]
    }

    /// `sigma(c, x)`, the second elementary symmetric form in the conjugates of `cx`.
    #[inline]
    pub fn sigma(&self, c: u32, x: u32) -> u8 {
        self.inner.sigma[self.mul(c, x) as usize]
    }

    /// `sigma(1, x)`.
    #[inline]
    pub fn sigma1(&self, x: u32) -> u8 {
        self.inner.sigma[x as usize]
    }

    /// Coordinates of the functional `x -> Tr(bx)` in the polynomial basis:
    /// bit `i` of the result is `Tr(b x^i)`, so `Tr(bx) = parity(dual(b) & x)`.
    #[inline]
    pub fn trace_dual(&self, b: u32) -> u32 {
        self.inner.trace_dual[b as usize]
    }

    /// `sum_{i<len} x^(2^(step*i))`, the building block of relative traces.
    pub fn frobenius_sum(&self, x: u32, step: u32, len: u32) -> u32 {
        let mut acc = 0;
        let mut y = x;
        for _ in 0..len {
            acc ^= y;
            for _ in 0..step {
                y = self.square(y);
            }
        }
        acc
    }

    /// Evaluate `sigma(c, x)` directly from its defining double sum, without tables.
    pub fn sigma_direct(&self, c: u32, x: u32) -> u32 {
        let y = self.mul(c, x);
        let mut conj = y;
        let mut prefix = 0;
        let mut acc = 0;
        for _ in 0..self.degree() {
            acc ^= self.mul(conj, prefix);
            prefix ^= conj;
            conj = self.square(conj);
        }
        acc
    }
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

#[inline]
fn table_mul(t: &Tables, a: u32, b: u32) -> u32 {
    if a == 0 || b == 0 {
        0
    } else {
        t.exp[(t.log[a as usize] + t.log[b as usize]) as usize]
    }
}

fn trace_and_e2(t: &Tables, x: u32) -> (u8, u8) {
    let mut conj = x;
    let mut prefix = 0u32;
    let mut e2 = 0u32;
    for _ in 0..t.m {
        e2 ^= table_mul(t, conj, prefix);
        prefix ^= conj;
        conj = table_mul(t, conj, conj);
    }
    debug_assert!(prefix <= 1 && e2 <= 1);
    (prefix as u8, e2 as u8)
}

/// Exhaustively checks
/// `sigma(c, x1 + x2) = sigma(c, x1) + sigma(c, x2) + Tr(c x1) Tr(c x2) + Tr(c^2 x1 x2)`.
pub fn sigma_cocycle_check(field: &Field) -> bool {
    field.elements().all(|c| {
        let c2 = field.square(c);
        field.elements().all(|x1| {
            field.elements().all(|x2| {
                let lhs = field.sigma(c, x1 ^ x2);
                let rhs = field.sigma(c, x1)
                    ^ field.sigma(c, x2)
                    ^ (field.trace(field.mul(c, x1)) & field.trace(field.mul(c, x2)))
                    ^ field.trace(field.mul(c2, field.mul(x1, x2)));
                lhs == rhs
            })
        })
    })
}

/// An embedding of GF(2^k) into GF(2^n), `k | n`.
///
/// `images[j]` is the image of the element `j` of `GF(2^k)` (registry
/// polynomial, or GF(2) for `k = 1`). The embedding maps the polynomial
/// basis of the small field to powers of the smallest root of its defining
/// polynomial in the big field, so it is additive on encodings.
#[derive(Clone, Debug)]
pub struct SubfieldEmbedding {
    big: Field,
    small: Option<Field>,
    k: u32,
    images: Vec<u32>,
    back: Vec<u32>,
}

impl SubfieldEmbedding {
    pub fn new(big: &Field, k: u32) -> Result<Self, FieldError> {
        let n = big.degree();
        if k == 0 || !n.is_multiple_of(k) {
            return Err(FieldError::NotASubfield { n, k });
        }
        let (small, beta) = if k == 1 {
            (None, 1)
        } else {
            let small = Field::new(k)?;
            let poly = small.poly();
            let beta = big
                .elements()
                .find(|&z| {
                    let mut acc = 0;
                    let mut zp = 1;
                    for i in 0..=k {
                        if (poly >> i) & 1 == 1 {
                            acc ^= zp;
                        }
                        zp = big.mul(zp, z);
                    }
                    acc == 0
                })
                .ok_or(FieldError::NotASubfield { n, k })?;
            (Some(small), beta)
        };
        let mut basis = Vec::with_capacity(k as usize);
        let mut p = 1;
        for _ in 0..k {
            basis.push(p);
            p = big.mul(p, beta);
        }
        let images: Vec<u32> = (0..1u32 << k)
            .map(|j| {
                basis
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| (j >> i) & 1 == 1)
                    .fold(0, |acc, (_, &b)| acc ^ b)
            })
            .collect();
        let mut back = vec![u32::MAX; big.size()];
        for (j, &z) in images.iter().enumerate() {
            back[z as usize] = j as u32;
        }
        Ok(SubfieldEmbedding {
            big: big.clone(),
            small,
            k,
            images,
            back,
        })
    }

    #[inline]
    pub fn big(&self) -> &Field {
        &self.big
    }

    /// The small field as a standalone model (`None` for GF(2)).
    pub fn small(&self) -> Option<&Field> {
        self.small.as_ref()
    }

    #[inline]
    pub fn k(&self) -> u32 {
        self.k
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.big.degree()
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// Image of a small-field element in the big field.
    #[inline]
    pub fn embed(&self, j: u32) -> u32 {
        self.images[j as usize]
    }

    /// Small-field encoding of a big-field element, if it lies in the subfield.
    #[inline]
    pub fn restrict(&self, z: u32) -> Option<u32> {
        match self.back[z as usize] {
            u32::MAX => None,
            j => Some(j),
        }
    }

    /// Relative trace `Tr^n_k(x) = sum_{i < n/k} x^(2^(k i))`, as a big-field element.
    pub fn rel_trace(&self, x: u32) -> u32 {
        self.big.frobenius_sum(x, self.k, self.n() / self.k)
    }

    /// Relative trace as a small-field encoding.
    pub fn rel_trace_small(&self, x: u32) -> u32 {
        let z = self.rel_trace(x);
        self.restrict(z).expect("relative trace lands in the subfield")
    }

    /// Absolute trace of the subfield, `Tr^k_1(z) = sum_{i<k} z^(2^i)`, for `z` in the subfield.
    pub fn small_trace(&self, z: u32) -> u8 {
        self.big.frobenius_sum(z, 1, self.k) as u8
    }
}
