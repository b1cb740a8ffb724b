//! Generalized Boolean functions `V_n -> Z_{2^k}` and their `H` and `K` spectra.

use alloc::vec;
use alloc::vec::Vec;

use crate::boolfn::{root_spectrum, BoolFn, Flavor};
use crate::cyclo::{add_root, width, CycInt};
use crate::error::FnError;
use crate::field::Field;

pub const MAX_K: u32 = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenFn {
    n: u32,
    k: u32,
    values: Vec<u32>,
    flavor: Flavor,
}

/// Which way [`GenFn::nega_shift`] moves.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ShiftDirection {
    /// Nega side to plain side: add `2^(k-2) Tr(x) + 2^(k-1) sigma(1, x)`.
    ToPlain,
    /// Plain side to nega side: subtract the same term.
    ToNega,
}

/// Spectrum values for every nonzero `c` and every `u`, at level `max(k, 2)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenSpectrum {
    n: u32,
    k: u32,
    rows: Vec<Vec<CycInt>>,
}

impl GenSpectrum {
    pub(crate) fn from_rows(n: u32, k: u32, rows: Vec<Vec<CycInt>>) -> Self {
        GenSpectrum { n, k, rows }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    /// Value at nonzero `c` and `u`.
    pub fn get(&self, c: u32, u: u32) -> &CycInt {
        &self.rows[c as usize - 1][u as usize]
    }

    /// Row for nonzero `c`.
    pub fn row(&self, c: u32) -> &[CycInt] {
        &self.rows[c as usize - 1]
    }

    pub fn is_flat_at(&self, c: u32) -> bool {
        row_is_flat(self.row(c), self.n)
    }

    pub fn is_flat(&self) -> bool {
        self.rows.iter().all(|r| row_is_flat(r, self.n))
    }

    /// `sum_u z conj(z) = 2^(2n)` for every row.
    pub fn parseval_holds(&self) -> bool {
        let target = 1i64 << (2 * self.n);
        self.rows.iter().all(|row| {
            let mut acc = CycInt::zero(row[0].level());
            for z in row {
                acc += &z.norm_sq();
            }
            acc.as_integer() == Some(target)
        })
    }
}

pub(crate) fn row_is_flat(row: &[CycInt], n: u32) -> bool {
    let target = 1i64 << n;
    row.iter().all(|z| z.norm_is(target))
}

/// Working cyclotomic level for `Z_{2^k}` values: `i` must be available.
#[inline]
pub fn level_for(k: u32) -> u32 {
    k.max(2)
}

impl GenFn {
    pub fn new(n: u32, k: u32, values: Vec<u32>, flavor: Flavor) -> Result<Self, FnError> {
        if k == 0 || k > MAX_K {
            return Err(FnError::BadTable);
        }
        if !flavor.accepts(n) || values.len() != 1usize << n || values.iter().any(|&v| v >> k != 0) {
            return Err(FnError::BadTable);
        }
        Ok(GenFn { n, k, values, flavor })
    }

    pub fn from_fn(n: u32, k: u32, flavor: Flavor, mut f: impl FnMut(u32) -> u32) -> Result<Self, FnError> {
        let mask = (1u32 << k) - 1;
        Self::new(n, k, (0..1u32 << n).map(|x| f(x) & mask).collect(), flavor)
    }

    /// `sum_i 2^i a_i`.
    pub fn from_components(k: u32, parts: &[BoolFn]) -> Result<Self, FnError> {
        if parts.len() != k as usize || parts.is_empty() {
            return Err(FnError::DimensionMismatch);
        }
        let n = parts[0].n();
        let flavor = parts[0].flavor().clone();
        if parts.iter().any(|p| p.n() != n || *p.flavor() != flavor) {
            return Err(FnError::FlavorMismatch);
        }
        Self::from_fn(n, k, flavor, |x| {
            parts
                .iter()
                .enumerate()
                .fold(0, |acc, (i, p)| acc | (p.get(x) as u32) << i)
        })
    }

    /// `2^(k-1) g` for a Boolean `g`.
    pub fn from_top_bit(g: &BoolFn, k: u32) -> Result<Self, FnError> {
        Self::from_fn(g.n(), k, g.flavor().clone(), |x| (g.get(x) as u32) << (k - 1))
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn flavor(&self) -> &Flavor {
        &self.flavor
    }

    pub fn values(&self) -> &[u32] {
        &self.values
    }

    #[inline]
    pub fn get(&self, x: u32) -> u32 {
        self.values[x as usize]
    }

    fn modulus_mask(&self) -> u32 {
        (1u32 << self.k) - 1
    }

    pub fn with_flavor(&self, flavor: Flavor) -> Result<Self, FnError> {
        Self::new(self.n, self.k, self.values.clone(), flavor)
    }

    /// Pointwise `f(x) + g(x) mod 2^k`.
    pub fn add(&self, other: &GenFn) -> Result<Self, FnError> {
        if self.flavor != other.flavor || self.n != other.n || self.k != other.k {
            return Err(FnError::FlavorMismatch);
        }
        Self::from_fn(self.n, self.k, self.flavor.clone(), |x| self.get(x) + other.get(x))
    }

    /// `c f mod 2^k`.
    pub fn scale(&self, c: u32) -> Self {
        let mask = self.modulus_mask();
        GenFn {
            values: self.values.iter().map(|&v| v.wrapping_mul(c) & mask).collect(),
            ..self.clone()
        }
    }

    /// `f mod 2^k2` as a function into `Z_{2^k2}`.
    pub fn reduce(&self, k2: u32) -> Result<Self, FnError> {
        if k2 == 0 || k2 > self.k {
            return Err(FnError::DimensionMismatch);
        }
        Self::from_fn(self.n, k2, self.flavor.clone(), |x| self.get(x))
    }

    pub fn bit_component(&self, i: u32) -> Result<BoolFn, FnError> {
        if i >= self.k {
            return Err(FnError::IndexOutOfRange { index: i, k: self.k });
        }
        BoolFn::from_fn(self.n, self.flavor.clone(), |x| ((self.get(x) >> i) & 1) as u8)
    }

    pub fn components(&self) -> Vec<BoolFn> {
        (0..self.k).map(|i| self.bit_component(i).expect("index below k")).collect()
    }

    fn field(&self) -> Result<&Field, FnError> {
        match &self.flavor {
            Flavor::Univariate(f) => Ok(f),
            _ => Err(FnError::FlavorMismatch),
        }
    }

    /// `H_f(c, u)` for all `u` at one nonzero `c`.
    pub fn h_row(&self, c: u32) -> Vec<CycInt> {
        let level = level_for(self.k);
        let step = 1u64 << (level - self.k);
        root_spectrum(self.n, level, &self.flavor, |x| c as u64 * self.get(x) as u64 * step)
    }

    pub fn h_transform(&self) -> GenSpectrum {
        GenSpectrum {
            n: self.n,
            k: self.k,
            rows: (1..1u32 << self.k).map(|c| self.h_row(c)).collect(),
        }
    }

    /// `K_f(c, u)` for all `u` at one nonzero `c` (univariate only).
    pub fn k_row(&self, c: u32) -> Result<Vec<CycInt>, FnError> {
        let field = self.field()?;
        let level = level_for(self.k);
        let step = 1u64 << (level - self.k);
        let c0 = (c & 1) as u64;
        let half = 1u64 << (level - 1);
        let quarter = 1u64 << (level - 2);
        Ok(root_spectrum(self.n, level, &self.flavor, |x| {
            c as u64 * self.get(x) as u64 * step
                + c0 * field.sigma1(x) as u64 * half
                + c0 * field.trace(x) as u64 * quarter
        }))
    }

    pub fn k_transform(&self) -> Result<GenSpectrum, FnError> {
        let rows = (1..1u32 << self.k)
            .map(|c| self.k_row(c))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GenSpectrum { n: self.n, k: self.k, rows })
    }

    /// `|H_f(1, u)| = 2^(n/2)` for all `u`.
    pub fn is_gbent(&self) -> bool {
        if self.k == 1 {
            return self.bit_component(0).expect("k = 1").is_bent();
        }
        row_is_flat(&self.h_row(1), self.n)
    }

    /// `|H_f(c, u)| = 2^(n/2)` for all `u` and nonzero `c`.
    pub fn is_z2k_bent(&self) -> bool {
        if self.k == 1 {
            return self.is_gbent();
        }
        (1..1u32 << self.k).all(|c| row_is_flat(&self.h_row(c), self.n))
    }

    /// `2^t f` gbent for every `0 <= t < k`; equivalent to [`is_z2k_bent`](Self::is_z2k_bent).
    pub fn is_z2k_bent_via_scalings(&self) -> bool {
        (0..self.k).all(|t| self.scale(1 << t).is_gbent())
    }

    pub fn is_nega_gbent(&self) -> Result<bool, FnError> {
        if self.k == 1 {
            self.field()?;
            return self.bit_component(0)?.is_cbent4(1);
        }
        Ok(row_is_flat(&self.k_row(1)?, self.n))
    }

    pub fn is_nega_z2k_bent(&self) -> Result<bool, FnError> {
        if self.k == 1 {
            return self.is_nega_gbent();
        }
        for c in 1..1u32 << self.k {
            if !row_is_flat(&self.k_row(c)?, self.n) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `D_z f(x) = f(x + z) - f(x) + 2^(k-1) Tr(zx)`.
    pub fn modified_derivative(&self, z: u32) -> Result<GenFn, FnError> {
        let field = self.field()?;
        if z == 0 {
            return Err(FnError::ZeroDirection);
        }
        let top = 1u32 << (self.k - 1);
        let modulus = 1u32 << self.k;
        Self::from_fn(self.n, self.k, self.flavor.clone(), |x| {
            self.get(x ^ z) + modulus - self.get(x) + top * field.trace(field.mul(z, x)) as u32
        })
    }

    /// Every modified derivative is balanced.
    pub fn nega_derivative_balanced(&self) -> Result<bool, FnError> {
        for z in 1..1u32 << self.n {
            if !self.modified_derivative(z)?.is_balanced_zk() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Every value of `Z_{2^k}` is taken `2^(n-k)` times.
    pub fn is_balanced_zk(&self) -> bool {
        if self.k > self.n {
            return false;
        }
        let mut counts = vec![0u32; 1 << self.k];
        for &v in &self.values {
            counts[v as usize] += 1;
        }
        let want = 1u32 << (self.n - self.k);
        counts.iter().all(|&c| c == want)
    }

    /// `sum_y zeta^(c g(y)) = 0` for every nonzero `c`.
    pub fn character_sums_vanish(&self) -> bool {
        let level = level_for(self.k);
        let step = 1u64 << (level - self.k);
        (1..1u64 << self.k).all(|c| {
            let mut row = vec![0i64; width(level)];
            for &v in &self.values {
                add_root(&mut row, c * v as u64 * step, 1);
            }
            row.iter().all(|&t| t == 0)
        })
    }

    /// The affine-space characterization of gbentness: `a_{k-1} + <a_0, ..., a_{k-2}>`
    /// consists of bent functions whose duals respect every sum of three.
    pub fn gbent_affine_space_check(&self) -> bool {
        if self.n % 2 == 1 {
            return false;
        }
        let parts = self.components();
        let top = &parts[self.k as usize - 1];
        let lower = &parts[..self.k as usize - 1];
        let mut members = Vec::with_capacity(1 << lower.len());
        for mask in 0..1u32 << lower.len() {
            let mut g = top.clone();
            for (i, a) in lower.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    g = g.add(a).expect("same flavor");
                }
            }
            members.push(g);
        }
        let mut duals = Vec::with_capacity(members.len());
        for g in &members {
            match g.dual() {
                Ok(d) => duals.push(d),
                Err(_) => return false,
            }
        }
        // sum of three members is the member indexed by the XOR of their masks
        let len = members.len();
        for i in 0..len {
            for j in i + 1..len {
                for l in j + 1..len {
                    let sum = &duals[i ^ j ^ l];
                    let rhs = duals[i].add(&duals[j]).and_then(|d| d.add(&duals[l])).expect("same flavor");
                    if *sum != rhs {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// The shift `f +- (2^(k-2) Tr(x) + 2^(k-1) sigma(1, x)) mod 2^k` relating the
    /// nega transforms to the plain ones. `ToPlain` and `ToNega` are mutually inverse.
    pub fn nega_shift(&self, direction: ShiftDirection) -> Result<GenFn, FnError> {
        if self.k < 2 {
            return Err(FnError::KTooSmall(self.k));
        }
        let field = self.field()?;
        let k = self.k;
        let modulus = 1u32 << k;
        Self::from_fn(self.n, k, self.flavor.clone(), |x| {
            let s = ((field.trace(x) as u32) << (k - 2)) + ((field.sigma1(x) as u32) << (k - 1));
            match direction {
                ShiftDirection::ToPlain => self.get(x) + s,
                ShiftDirection::ToNega => self.get(x) + modulus - s % modulus,
            }
        })
    }

    /// `f + 2^(k-1) c(x)` for a Boolean `c`.
    pub fn add_top_bit(&self, c: &BoolFn) -> Result<GenFn, FnError> {
        if c.flavor() != &self.flavor || c.n() != self.n {
            return Err(FnError::FlavorMismatch);
        }
        let top = 1u32 << (self.k - 1);
        Self::from_fn(self.n, self.k, self.flavor.clone(), |x| self.get(x) + top * c.get(x) as u32)
    }

    /// The three conditions characterizing nega-`Z_{2^k}`-bentness:
    /// `g` gbent, `g + 2^(k-1) Tr` gbent, and `f mod 2^(k-1)` is `Z_{2^(k-1)}`-bent,
    /// where `g` is the plain-side shift of `f`.
    pub fn lemma123_check(&self) -> Result<(bool, bool, bool), FnError> {
        let g = self.nega_shift(ShiftDirection::ToPlain)?;
        let field = self.field()?;
        let tr = BoolFn::from_fn(self.n, self.flavor.clone(), |x| field.trace(x))?;
        let h = g.add_top_bit(&tr)?;
        let low = self.reduce(self.k - 1)?;
        Ok((g.is_gbent(), h.is_gbent(), low.is_z2k_bent()))
    }

    /// For gbent `f`, whether `f + 2^(k-1) Tr` is gbent too.
    pub fn top_bit_tr_invariance_check(&self) -> Result<bool, FnError> {
        let field = self.field()?.clone();
        if !self.is_gbent() {
            return Err(FnError::NotGbent);
        }
        let tr = BoolFn::from_fn(self.n, self.flavor.clone(), |x| field.trace(x))?;
        Ok(self.add_top_bit(&tr)?.is_gbent())
    }
}
