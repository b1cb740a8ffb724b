//! Direct `O(4^n)` evaluations of every transform, used to cross-check the butterflies.

use alloc::vec::Vec;

use crate::boolfn::BoolFn;
use crate::cyclo::CycInt;
use crate::error::FnError;
use crate::genfn::{level_for, GenFn};

pub fn walsh(f: &BoolFn) -> Vec<i64> {
    let size = 1u32 << f.n();
    (0..size)
        .map(|b| {
            (0..size)
                .map(|x| if f.get(x) ^ f.flavor().inner(b, x) == 0 { 1 } else { -1 })
                .sum()
        })
        .collect()
}

fn sum_roots(n: u32, level: u32, e: impl Fn(u32) -> i64) -> CycInt {
    let mut acc = CycInt::zero(level);
    for x in 0..1u32 << n {
        acc += &CycInt::root_power(level, e(x));
    }
    acc
}

pub fn h_row(f: &GenFn, c: u32) -> Vec<CycInt> {
    let level = level_for(f.k());
    let step = 1i64 << (level - f.k());
    let half = 1i64 << (level - 1);
    (0..1u32 << f.n())
        .map(|u| {
            sum_roots(f.n(), level, |x| {
                c as i64 * f.get(x) as i64 * step + half * f.flavor().inner(u, x) as i64
            })
        })
        .collect()
}

pub fn k_row(f: &GenFn, c: u32) -> Result<Vec<CycInt>, FnError> {
    let field = f.flavor().field().ok_or(FnError::FlavorMismatch)?.clone();
    let level = level_for(f.k());
    let step = 1i64 << (level - f.k());
    let half = 1i64 << (level - 1);
    let quarter = 1i64 << (level - 2);
    let c0 = (c & 1) as i64;
    Ok((0..1u32 << f.n())
        .map(|u| {
            sum_roots(f.n(), level, |x| {
                let sign = field.trace(field.mul(u, x)) as i64 + c0 * field.sigma_direct(1, x) as i64;
                c as i64 * f.get(x) as i64 * step + half * sign + quarter * c0 * field.trace(x) as i64
            })
        })
        .collect())
}

/// `U_f^c` / `V_f^c` by direct summation.
pub fn bent4(f: &BoolFn, c: u32) -> Vec<CycInt> {
    let field = f.flavor().field().cloned();
    (0..1u32 << f.n())
        .map(|b| {
            sum_roots(f.n(), 2, |x| {
                let (q, l) = match &field {
                    None => (crate::boolfn::s2_form(c, x), (c & x).count_ones() as u8 & 1),
                    Some(fd) => (fd.sigma_direct(c, x) as u8, fd.trace(fd.mul(c, x))),
                };
                2 * (f.get(x) ^ q ^ f.flavor().inner(b, x)) as i64 + l as i64
            })
        })
        .collect()
}
