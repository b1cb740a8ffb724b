//! The twisted groups `(F_{2^n} x Z_{2^k}, *)` and `(F_{2^n} x F_{2^k}, *)`, their
//! characters and relative difference sets, and bent partitions.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use crate::boolfn::{BoolFn, Flavor};
use crate::cyclo::CycInt;
use crate::error::{FnError, GroupError};
use crate::field::{Field, SubfieldEmbedding};
use crate::genfn::{level_for, GenFn};
use crate::vect::VectFn;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    pub x: u32,
    pub y: u32,
}

impl GroupElement {
    pub const fn new(x: u32, y: u32) -> Self {
        GroupElement { x, y }
    }
}

/// `chi_{u,c}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Character {
    pub u: u32,
    pub c: u32,
}

#[derive(Clone, Debug)]
pub enum Variant {
    /// Second coordinate in `Z_{2^k}`, twist `2^(k-1) Tr(x1 x2)`.
    Zk,
    /// Second coordinate in `F_{2^k}`, twist `Tr^n_k(x1 x2)`.
    F4(SubfieldEmbedding),
}

#[derive(Clone, Debug)]
pub struct StarGroup {
    field: Field,
    k: u32,
    variant: Variant,
}

impl StarGroup {
    pub fn zk(field: &Field, k: u32) -> Result<Self, GroupError> {
        if k == 0 || k > 12 {
            return Err(GroupError::Fn(FnError::KTooSmall(k)));
        }
        Ok(StarGroup { field: field.clone(), k, variant: Variant::Zk })
    }

    pub fn f4(field: &Field, k: u32) -> Result<Self, GroupError> {
        let e = SubfieldEmbedding::new(field, k).map_err(|e| GroupError::Fn(e.into()))?;
        Ok(StarGroup { field: field.clone(), k, variant: Variant::F4(e) })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn n(&self) -> u32 {
        self.field.degree()
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn variant(&self) -> &Variant {
        &self.variant
    }

    pub fn order(&self) -> usize {
        1 << (self.n() + self.k)
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::new(0, 0)
    }

    #[inline]
    pub fn index(&self, g: GroupElement) -> usize {
        (g.x | g.y << self.n()) as usize
    }

    #[inline]
    pub fn element(&self, index: usize) -> GroupElement {
        let n = self.n();
        GroupElement::new(index as u32 & ((1 << n) - 1), (index >> n) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order()).map(|i| self.element(i))
    }

    /// `(x1, y1) * (x2, y2)`.
    pub fn add(&self, g: GroupElement, h: GroupElement) -> GroupElement {
        let prod = self.field.mul(g.x, h.x);
        let y = match &self.variant {
            Variant::Zk => {
                let mask = (1u32 << self.k) - 1;
                (g.y + h.y + ((self.field.trace(prod) as u32) << (self.k - 1))) & mask
            }
            Variant::F4(e) => g.y ^ h.y ^ e.rel_trace_small(prod),
        };
        GroupElement::new(g.x ^ h.x, y)
    }

    pub fn neg(&self, g: GroupElement) -> GroupElement {
        let y = match &self.variant {
            Variant::Zk => {
                let modulus = 1u32 << self.k;
                (modulus - g.y + ((self.field.trace(g.x) as u32) << (self.k - 1))) & (modulus - 1)
            }
            Variant::F4(e) => g.y ^ e.rel_trace_small(self.field.square(g.x)),
        };
        GroupElement::new(g.x, y)
    }

    /// `g * (-h)`.
    pub fn sub(&self, g: GroupElement, h: GroupElement) -> GroupElement {
        self.add(g, self.neg(h))
    }

    /// `g * g * ... * g` (`times` copies).
    pub fn multiple(&self, g: GroupElement, times: u64) -> GroupElement {
        (0..times).fold(self.identity(), |acc, _| self.add(acc, g))
    }

    pub fn element_order(&self, g: GroupElement) -> u64 {
        let mut acc = g;
        let mut ord = 1;
        while acc != self.identity() {
            acc = self.add(acc, g);
            ord += 1;
        }
        ord
    }

    /// Number of elements of each order.
    pub fn order_census(&self) -> BTreeMap<u64, usize> {
        let mut census = BTreeMap::new();
        for g in self.elements() {
            *census.entry(self.element_order(g)).or_insert(0) += 1;
        }
        census
    }

    /// Level of the cyclotomic ring holding character values.
    pub fn char_level(&self) -> u32 {
        match self.variant {
            Variant::Zk => level_for(self.k),
            Variant::F4(_) => 2,
        }
    }

    /// Exponent `e` with `chi(g) = zeta_{2^level}^e`.
    pub fn char_exponent(&self, chi: Character, g: GroupElement) -> u64 {
        let f = &self.field;
        let level = self.char_level();
        match &self.variant {
            Variant::Zk => {
                let c0 = (chi.c & 1) as u64;
                let sign = (f.trace(f.mul(chi.u, g.x)) as u64 + c0 * f.sigma1(g.x) as u64) & 1;
                (sign << (level - 1))
                    + ((chi.c as u64 * g.y as u64) << (level - self.k))
                    + ((c0 * f.trace(g.x) as u64) << (level - 2))
            }
            Variant::F4(e) => {
                let c = e.embed(chi.c);
                let sign = e.small_trace(f.mul(f.square(c), e.embed(g.y)))
                    ^ f.trace(f.mul(chi.u, g.x))
                    ^ f.sigma(c, g.x);
                2 * sign as u64 + f.trace(f.mul(c, g.x)) as u64
            }
        }
    }

    pub fn char_eval(&self, chi: Character, g: GroupElement) -> CycInt {
        CycInt::root_power(self.char_level(), self.char_exponent(chi, g) as i64)
    }

    /// `chi(R) = sum_{r in R} chi(r)`.
    pub fn char_sum(&self, chi: Character, set: &[GroupElement]) -> CycInt {
        let level = self.char_level();
        let mut row = vec![0i64; 1 << (level - 1)];
        for &g in set {
            crate::cyclo::add_root(&mut row, self.char_exponent(chi, g), 1);
        }
        CycInt::from_coeffs(level, row).expect("width matches level")
    }

    pub fn characters(&self) -> impl Iterator<Item = Character> + '_ {
        let n = self.n();
        (0..1u32 << self.k).flat_map(move |c| (0..1u32 << n).map(move |u| Character { u, c }))
    }

    /// `{(x, f(x))}` for a univariate `f` into `Z_{2^k}`.
    pub fn graph_of_gen(&self, f: &GenFn) -> Result<Vec<GroupElement>, GroupError> {
        let same_field = matches!(f.flavor(), Flavor::Univariate(fd) if *fd == self.field);
        if !matches!(self.variant, Variant::Zk) || f.k() != self.k || !same_field {
            return Err(GroupError::VariantMismatch);
        }
        Ok((0..1u32 << self.n()).map(|x| GroupElement::new(x, f.get(x))).collect())
    }

    /// `{(x, F(x))}` for a univariate `F` into `F_{2^k}`.
    pub fn graph_of_vect(&self, f: &VectFn) -> Result<Vec<GroupElement>, GroupError> {
        let same_field = matches!(f.flavor(), Flavor::Univariate(fd) if *fd == self.field);
        if !matches!(self.variant, Variant::F4(_)) || f.k() != self.k || !same_field {
            return Err(GroupError::VariantMismatch);
        }
        Ok((0..1u32 << self.n()).map(|x| GroupElement::new(x, f.get(x))).collect())
    }

    /// `(kappa, nu, lambda)` = (`|R|`, `|N|`, the forced difference count), if `lambda` is integral.
    pub fn rds_parameters(&self, set: &[GroupElement], in_n: &impl Fn(GroupElement) -> bool) -> Option<(u64, u64, u64)> {
        let kappa = set.len() as u64;
        let nu = self.elements().filter(|&g| in_n(g)).count() as u64;
        let rest = self.order() as u64 - nu;
        if rest == 0 || !(kappa * kappa.saturating_sub(1)).is_multiple_of(rest) {
            return None;
        }
        Some((kappa, nu, kappa * kappa.saturating_sub(1) / rest))
    }

    /// Counting test: every element outside `N` is a difference `r1 * (-r2)` exactly
    /// `lambda` times and no nonidentity element of `N` is one.
    pub fn is_rds(&self, set: &[GroupElement], in_n: impl Fn(GroupElement) -> bool) -> bool {
        let Some((_, _, lambda)) = self.rds_parameters(set, &in_n) else {
            return false;
        };
        let mut counts = vec![0u64; self.order()];
        for &a in set {
            for &b in set {
                counts[self.index(self.sub(a, b))] += 1;
            }
        }
        self.elements().skip(1).all(|g| {
            let c = counts[self.index(g)];
            if in_n(g) {
                c == 0
            } else {
                c == lambda
            }
        })
    }

    /// Character test: `|chi(R)|^2` is `kappa^2`, `kappa - lambda nu` or `kappa`
    /// for the principal character, characters trivial on `N`, and the rest.
    pub fn is_rds_by_characters(&self, set: &[GroupElement], in_n: impl Fn(GroupElement) -> bool) -> bool {
        let Some((kappa, nu, lambda)) = self.rds_parameters(set, &in_n) else {
            return false;
        };
        let forbidden: Vec<GroupElement> = self.elements().filter(|&g| in_n(g)).collect();
        let (kappa, nu, lambda) = (kappa as i64, nu as i64, lambda as i64);
        self.characters().all(|chi| {
            let norm = self.char_sum(chi, set).norm_sq_integer();
            let want = if chi.u == 0 && chi.c == 0 {
                kappa * kappa
            } else if forbidden.iter().all(|&g| self.char_exponent(chi, g).is_multiple_of(1 << self.char_level())) {
                kappa - lambda * nu
            } else {
                kappa
            };
            norm == Some(want)
        })
    }
}

/// A partition of `V_n`, optionally with a distinguished part `U` (normal form).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    n: u32,
    u: Option<Vec<u32>>,
    parts: Vec<Vec<u32>>,
}

impl Partition {
    pub fn new(n: u32, u: Option<Vec<u32>>, parts: Vec<Vec<u32>>) -> Result<Self, GroupError> {
        let mut seen = vec![false; 1 << n];
        for &x in u.iter().flatten().chain(parts.iter().flatten()) {
            if x >> n != 0 || core::mem::replace(&mut seen[x as usize], true) {
                return Err(GroupError::NotAPartition);
            }
        }
        if seen.iter().any(|&s| !s) {
            return Err(GroupError::NotAPartition);
        }
        Ok(Partition { n, u, parts })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn u(&self) -> Option<&[u32]> {
        self.u.as_deref()
    }

    pub fn parts(&self) -> &[Vec<u32>] {
        &self.parts
    }

    /// Plain partition obtained by joining `U` to part `i`.
    pub fn merge_u_into(&self, i: usize) -> Result<Partition, GroupError> {
        let mut parts = self.parts.clone();
        let u = self.u.clone().ok_or(GroupError::NotAPartition)?;
        parts.get_mut(i).ok_or(GroupError::NotAPartition)?.extend(u);
        Partition::new(self.n, None, parts)
    }

    /// Every Boolean function whose support is a union of exactly `K/2` parts
    /// (and, in normal form, constant on `U` with either constant) is bent.
    pub fn is_bent_partition(&self) -> bool {
        self.bent_indicator_failures(true) == 0
    }

    /// Number of indicator functions checked.
    pub fn indicator_count(&self) -> usize {
        let kk = self.parts.len();
        let choose = (0..1u64 << kk).filter(|m| m.count_ones() as usize * 2 == kk).count();
        choose * if self.u.is_some() { 2 } else { 1 }
    }

    fn bent_indicator_failures(&self, stop_early: bool) -> usize {
        let kk = self.parts.len();
        if kk < 2 || kk % 2 == 1 || kk > 24 {
            return 1;
        }
        let consts: &[u8] = if self.u.is_some() { &[0, 1] } else { &[0] };
        let mut failures = 0;
        for mask in (0..1u32 << kk).filter(|m| m.count_ones() as usize * 2 == kk) {
            for &c in consts {
                let mut table = vec![0u8; 1 << self.n];
                for (i, part) in self.parts.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        part.iter().for_each(|&x| table[x as usize] = 1);
                    }
                }
                for &x in self.u.iter().flatten() {
                    table[x as usize] = c;
                }
                let f = BoolFn::new(self.n, table, Flavor::Multivariate).expect("valid table");
                if !f.is_bent() {
                    failures += 1;
                    if stop_early {
                        return failures;
                    }
                }
            }
        }
        failures
    }
}

/// Desarguesian spread of `F_{2^m}^2` in normal form, points packed as `x | y << m`:
/// `U = {(0, y)}` and `A_s = {(x, s x) : x != 0}` for `s` in increasing order.
pub fn desarguesian_spread(field: &Field) -> Partition {
    let m = field.degree();
    let u = field.elements().map(|y| y << m).collect();
    let parts = field
        .elements()
        .map(|s| (1..1u32 << m).map(|x| x | field.mul(s, x) << m).collect())
        .collect();
    Partition::new(2 * m, Some(u), parts).expect("spread covers the space")
}

/// Parts `f^-1(j)` for `j = 0, ..., 2^k - 1`.
pub fn preimage_partition(f: &GenFn) -> Partition {
    let mut parts = vec![Vec::new(); 1 << f.k()];
    for x in 0..1u32 << f.n() {
        parts[f.get(x) as usize].push(x);
    }
    Partition::new(f.n(), None, parts).expect("preimages partition the domain")
}

/// `f = j` on `A_j` and `0` on `U`.
pub fn z2k_bent_from_partition(p: &Partition, k: u32, flavor: Flavor) -> Result<GenFn, GroupError> {
    if p.u.is_none() {
        return Err(GroupError::NotAPartition);
    }
    if p.parts.len() != 1 << k {
        return Err(GroupError::WrongPartCount { expected: 1 << k, found: p.parts.len() });
    }
    let mut values = vec![0u32; 1 << p.n];
    for (j, part) in p.parts.iter().enumerate() {
        part.iter().for_each(|&x| values[x as usize] = j as u32);
    }
    Ok(GenFn::new(p.n, k, values, flavor)?)
}
