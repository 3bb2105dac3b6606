//! Dense polynomials over a prime field, coefficients stored low degree first.
//! Only what field construction needs: reduction, products, gcd and the
//! Rabin irreducibility test.

pub(crate) type Poly = Vec<u64>;

fn inv_mod(a: u64, p: u64) -> u64 {
    pow_mod(a % p, p - 2, p)
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

fn trim(f: &mut Poly) {
    while f.len() > 1 && *f.last().unwrap() == 0 {
        f.pop();
    }
    if f.is_empty() {
        f.push(0);
    }
}

fn is_zero(f: &Poly) -> bool {
    f.iter().all(|&c| c == 0)
}

fn degree(f: &Poly) -> Option<usize> {
    f.iter().rposition(|&c| c != 0)
}

/// Remainder of `f` modulo `g` (g nonzero).
pub(crate) fn rem(f: &Poly, g: &Poly, p: u64) -> Poly {
    let dg = degree(g).expect("division by zero polynomial");
    let lead_inv = inv_mod(g[dg], p);
    let mut r = f.clone();
    while let Some(dr) = degree(&r) {
        if dr < dg {
            break;
        }
        let factor = r[dr] * lead_inv % p;
        let shift = dr - dg;
        for (i, &gc) in g.iter().enumerate().take(dg + 1) {
            let sub = factor * gc % p;
            r[i + shift] = (r[i + shift] + p - sub) % p;
        }
    }
    trim(&mut r);
    r
}

pub(crate) fn mul(f: &Poly, g: &Poly, p: u64) -> Poly {
    let mut out = vec![0u64; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = (out[i + j] + a * b) % p;
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn mul_mod(f: &Poly, g: &Poly, m: &Poly, p: u64) -> Poly {
    rem(&mul(f, g, p), m, p)
}

pub(crate) fn pow_poly_mod(base: &Poly, mut exp: u64, m: &Poly, p: u64) -> Poly {
    let mut acc: Poly = vec![1];
    let mut b = rem(base, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(&acc, &b, m, p);
        }
        b = mul_mod(&b, &b, m, p);
        exp >>= 1;
    }
    acc
}

fn sub(f: &Poly, g: &Poly, p: u64) -> Poly {
    let n = f.len().max(g.len());
    let mut out: Poly = (0..n)
        .map(|i| {
            let a = f.get(i).copied().unwrap_or(0);
            let b = g.get(i).copied().unwrap_or(0);
            (a + p - b) % p
        })
        .collect();
    trim(&mut out);
    out
}

fn gcd(f: &Poly, g: &Poly, p: u64) -> Poly {
    let mut a = f.clone();
    let mut b = g.clone();
    while !is_zero(&b) {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Rabin's test for a monic polynomial of degree `r >= 1`.
pub(crate) fn is_irreducible(f: &Poly, p: u64) -> bool {
    let r = match degree(f) {
        Some(d) if d >= 1 => d as u32,
        _ => return false,
    };
    if r == 1 {
        return true;
    }
    let t: Poly = vec![0, 1];
    // t^(p^k) mod f for k = 0..=r
    let mut frob = Vec::with_capacity(r as usize + 1);
    let mut cur = rem(&t, f, p);
    frob.push(cur.clone());
    for _ in 0..r {
        cur = pow_poly_mod(&cur, p, f, p);
        frob.push(cur.clone());
    }
    if !is_zero(&sub(&frob[r as usize], &t, p)) {
        return false;
    }
    prime_factors(r as u64).into_iter().all(|l| {
        let k = (r as u64 / l) as usize;
        let g = gcd(f, &sub(&frob[k], &t, p), p);
        degree(&g) == Some(0)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn irreducibility_small_cases() {
        // t^2 + 1 over F_3 is irreducible, over F_5 it splits (2^2 = -1).
        assert!(is_irreducible(&vec![1, 0, 1], 3));
        assert!(!is_irreducible(&vec![1, 0, 1], 5));
        // t^2 over anything is reducible
        assert!(!is_irreducible(&vec![0, 0, 1], 7));
        // t^3 + 2t + 1 over F_3 is irreducible (no roots, degree 3)
        assert!(is_irreducible(&vec![1, 2, 0, 1], 3));
        // t^4 + 1 = (t^2+t+2)(t^2+2t+2) over F_3
        assert!(!is_irreducible(&vec![1, 0, 0, 0, 1], 3));
    }

    #[test]
    fn rem_and_mul() {
        let m = vec![1, 0, 1];
        let t = vec![0, 1];
        assert_eq!(mul_mod(&t, &t, &m, 3), vec![2]);
        assert_eq!(prime_factors(12), vec![2, 3]);
    }
}
