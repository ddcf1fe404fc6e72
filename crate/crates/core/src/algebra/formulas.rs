//! Specialised product formulas for particular factors, written out case by
//! case and independently of [`CanonC::try_mul`]. The `formulas-31` suite
//! checks each against the general product on a parameter grid.

use super::CanonC;

fn tri(k: u64, l: u64, m: u64) -> CanonC {
    CanonC::new(k, l, m).expect("formula produced the empty triple")
}

/// `b^c (ab)^l a^c · y` for the balanced element `b^c (ab)^l a^c`.
pub fn balanced_times(c: u64, l: u64, y: CanonC) -> CanonC {
    let (n, p, q) = y.triple();
    if c < n {
        tri(n, p, q)
    } else if c == n && c != 0 {
        tri(n, l + p + 1, q)
    } else if c == n {
        tri(0, l + p, q)
    } else {
        tri(c, l, q + c - n)
    }
}

/// `x · b^n (ab)^p a^n` for the balanced element `b^n (ab)^p a^n`.
pub fn times_balanced(x: CanonC, n: u64, p: u64) -> CanonC {
    let (i, l, m) = x.triple();
    if m < n {
        tri(i + n - m, p, n)
    } else if m == n && m != 0 {
        tri(i, l + p + 1, n)
    } else if m == n {
        tri(i, l + p, 0)
    } else {
        tri(i, l, m)
    }
}

/// `a · x · b`, nine cases on the leading `b`s and trailing `a`s of `x`.
pub fn a_x_b(x: CanonC) -> CanonC {
    let (n, p, q) = x.triple();
    match (n, q) {
        (n, 0) if n > 1 => tri(n, 0, 0),
        (n, 1) if n > 1 => tri(n - 1, p + 1, 0),
        (n, q) if n > 1 => tri(n - 1, p, q - 1),
        (1, 0) => tri(1, 0, 0),
        (1, 1) => tri(0, p + 2, 0),
        (1, q) => tri(0, p + 1, q - 1),
        (_, 0) => tri(0, 1, 0),
        (_, 1) => tri(0, 0, 1),
        (_, q) => tri(0, 0, q),
    }
}

/// `x · b`.
pub fn times_b(x: CanonC) -> CanonC {
    let (k, l, m) = x.triple();
    match m {
        0 => tri(k + 1, 0, 0),
        1 => tri(k, l + 1, 0),
        _ => tri(k, l, m - 1),
    }
}

/// `a · x`.
pub fn a_times(x: CanonC) -> CanonC {
    let (n, p, q) = x.triple();
    match n {
        0 => tri(0, 0, q + 1),
        1 => tri(0, p + 1, q),
        _ => tri(n - 1, p, q),
    }
}

/// `b · x`.
pub fn b_times(x: CanonC) -> CanonC {
    let (n, p, q) = x.triple();
    tri(n + 1, p, q)
}

/// `a · b · x`.
pub fn ab_times(x: CanonC) -> CanonC {
    let (n, p, q) = x.triple();
    if n == 0 {
        tri(0, p + 1, q)
    } else {
        tri(n, p, q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Region;

    #[test]
    fn agree_with_general_product_on_small_grid() {
        let (a, b) = (CanonC::A, CanonC::B);
        for x in Region::cube(5).elements() {
            assert_eq!(times_b(x), x * b, "x·b at {x}");
            assert_eq!(a_times(x), a * x, "a·x at {x}");
            assert_eq!(a_x_b(x), a * x * b, "a·x·b at {x}");
            assert_eq!(b_times(x), b * x);
            assert_eq!(ab_times(x), CanonC::AB * x);
        }
    }
}
