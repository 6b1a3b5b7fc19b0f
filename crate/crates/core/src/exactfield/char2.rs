//! Characteristic-2 helpers: Frobenius, absolute trace, and the
//! Artin–Schreier equation `mu^2 + mu = c`.

use super::{Field, FieldElem};
use crate::error::{Error, Result};

fn require_char2(f: Field) -> Result<()> {
    if f.characteristic() != 2 {
        return Err(Error::WrongCharacteristic(format!(
            "{f} has characteristic {}, expected 2",
            f.characteristic()
        )));
    }
    Ok(())
}

/// `x -> x^2`, a field automorphism of GF(2^k).
pub fn frobenius(x: &FieldElem) -> Result<FieldElem> {
    require_char2(x.field())?;
    Ok(x * x)
}

/// Unique square root in GF(2^k): `x^(2^(k-1))`.
pub fn frobenius_inverse(x: &FieldElem) -> Result<FieldElem> {
    require_char2(x.field())?;
    let k = x.field().degree();
    let mut r = x.clone();
    for _ in 1..k {
        r = &r * &r;
    }
    Ok(r)
}

/// `x + x^2 + x^4 + ... + x^(2^(k-1))`, an element of the prime field.
pub fn absolute_trace(x: &FieldElem) -> Result<FieldElem> {
    let f = x.field();
    if f.characteristic() != 2 {
        return Err(Error::WrongField(format!("{f} is not a binary field")));
    }
    let mut acc = x.clone();
    let mut pow = x.clone();
    for _ in 1..f.degree() {
        pow = &pow * &pow;
        acc += &pow;
    }
    Ok(acc)
}

/// Least solution (by canonical index) of `mu^2 + mu = c`, if any.
///
/// The map `mu -> mu^2 + mu` is GF(2)-linear on GF(2^k); the equation is
/// solved as a k x k linear system over GF(2) on coefficient vectors. Its
/// kernel is {0, 1}, so a solvable right-hand side has exactly the two
/// solutions `mu` and `mu + 1`.
pub fn artin_schreier_solve(c: &FieldElem) -> Result<Option<FieldElem>> {
    let f = c.field();
    require_char2(f)?;
    let Some(t) = f.tables() else {
        return Err(Error::Unsupported(format!(
            "no Artin-Schreier decision procedure for {f}"
        )));
    };
    let k = t.k as usize;
    // Column j: coefficient bits of L(x^j) where x^j has index 2^j.
    let cols: Vec<u32> = (0..k)
        .map(|j| {
            let b = f.from_index(1 << j).expect("basis element");
            ((&b * &b) + &b).index().unwrap() as u32
        })
        .collect();
    // Augmented rows: bits 0..k are the coefficients of unknowns, bit k is the rhs.
    let rhs = c.index().unwrap() as u32;
    let mut rows: Vec<u32> = (0..k)
        .map(|i| {
            let mut r = 0u32;
            for (j, col) in cols.iter().enumerate() {
                if col >> i & 1 == 1 {
                    r |= 1 << j;
                }
            }
            r | ((rhs >> i & 1) << k)
        })
        .collect();
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..k {
        let Some(p) = (row..k).find(|&r| rows[r] >> col & 1 == 1) else {
            continue;
        };
        rows.swap(row, p);
        for r in 0..k {
            if r != row && rows[r] >> col & 1 == 1 {
                rows[r] ^= rows[row];
            }
        }
        pivots.push(col);
        row += 1;
    }
    if rows[row..].iter().any(|r| r >> k & 1 == 1) {
        return Ok(None);
    }
    // Free variables set to zero.
    let mut mu = 0usize;
    for (r, &col) in pivots.iter().enumerate() {
        if rows[r] >> k & 1 == 1 {
            mu |= 1 << col;
        }
    }
    let a = f.from_index(mu)?;
    let b = &a + &f.one();
    let least = if a.index() <= b.index() { a } else { b };
    debug_assert_eq!(&(&least * &least) + &least, *c);
    Ok(Some(least))
}
