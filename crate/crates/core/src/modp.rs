//! Arithmetic and small dense linear algebra over prime fields `F_p`, `p < 2^32`.

pub fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

pub fn inv_mod(a: u64, p: u64) -> u64 {
    assert!(!a.is_multiple_of(p), "inverse of zero mod {p}");
    pow_mod(a, p - 2, p)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let mut sieve = vec![true; n as usize + 1];
    sieve[0] = false;
    sieve[1] = false;
    let mut i = 2;
    while i * i <= n as usize {
        if sieve[i] {
            let mut j = i * i;
            while j <= n as usize {
                sieve[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    (0..=n).filter(|&k| sieve[k as usize]).collect()
}

pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n.is_multiple_of(d) {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn primitive_root(p: u64) -> u64 {
    let fs = factorize(p - 1);
    (2..p)
        .find(|&g| fs.iter().all(|&(q, _)| pow_mod(g, (p - 1) / q, p) != 1))
        .unwrap_or(1)
}

/// Polynomials over `F_p`, constant term first, trimmed.
pub mod poly {
    use super::{inv_mod, pow_mod};

    pub fn trim(mut a: Vec<u64>) -> Vec<u64> {
        while a.len() > 1 && *a.last().unwrap() == 0 {
            a.pop();
        }
        if a.is_empty() {
            a.push(0);
        }
        a
    }

    pub fn is_zero(a: &[u64]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn degree(a: &[u64]) -> usize {
        a.iter().rposition(|&c| c != 0).unwrap_or(0)
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        trim(out)
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }

    pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        divrem(a, m, p).1
    }

    pub fn divrem(a: &[u64], m: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        let dm = degree(m);
        let mut r = trim(a.to_vec());
        if degree(&r) < dm || is_zero(&r) {
            return (vec![0], r);
        }
        let li = inv_mod(m[dm], p);
        let mut q = vec![0u64; degree(&r) - dm + 1];
        for i in (0..q.len()).rev() {
            let c = r.get(i + dm).copied().unwrap_or(0) * li % p;
            if c != 0 {
                for j in 0..=dm {
                    r[i + j] = (r[i + j] + p - c * m[j] % p) % p;
                }
            }
            q[i] = c;
        }
        r.truncate(dm.max(1));
        (trim(q), trim(r))
    }

    pub fn monic(a: &[u64], p: u64) -> Vec<u64> {
        let a = trim(a.to_vec());
        let d = degree(&a);
        if a[d] == 0 {
            return a;
        }
        let li = inv_mod(a[d], p);
        a.iter().map(|&c| c * li % p).collect()
    }

    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let mut x = trim(a.to_vec());
        let mut y = trim(b.to_vec());
        while !is_zero(&y) {
            let r = rem(&x, &y, p);
            x = y;
            y = r;
        }
        monic(&x, p)
    }

    pub fn powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
        let mut acc = vec![1u64];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                acc = rem(&mul(&acc, &b, p), m, p);
            }
            b = rem(&mul(&b, &b, p), m, p);
            e >>= 1;
        }
        acc
    }

    pub fn eval(a: &[u64], x: u64, p: u64) -> u64 {
        a.iter().rev().fold(0, |acc, &c| (acc * x + c) % p)
    }

    /// Distinct roots in `F_p` (p odd), sorted.
    pub fn roots(f: &[u64], p: u64) -> Vec<u64> {
        let f = monic(f, p);
        if degree(&f) == 0 {
            return Vec::new();
        }
        if p < 64 {
            return (0..p).filter(|&x| eval(&f, x, p) == 0).collect();
        }
        let xp = powmod(&[0, 1], p, &f, p);
        let g = gcd(&f, &sub(&xp, &[0, 1], p), p);
        let mut out = Vec::new();
        split_linear(&g, p, 1, &mut out);
        out.sort_unstable();
        out
    }

    fn split_linear(g: &[u64], p: u64, mut a: u64, out: &mut Vec<u64>) {
        let d = degree(g);
        if d == 0 {
            return;
        }
        if d == 1 {
            out.push((p - g[0] * inv_mod(g[1], p) % p) % p);
            return;
        }
        loop {
            let h = powmod(&[a % p, 1], (p - 1) / 2, g, p);
            let h = gcd(g, &sub(&h, &[1], p), p);
            a += 1;
            let dh = degree(&h);
            if dh > 0 && dh < d {
                let (q, _) = divrem(g, &h, p);
                split_linear(&h, p, a, out);
                split_linear(&q, p, a, out);
                return;
            }
        }
    }

    #[allow(dead_code)]
    pub fn pow_scalar(x: u64, e: u64, p: u64) -> u64 {
        pow_mod(x, e, p)
    }
}

/// Dense matrices mod p as rows.
pub mod mat {
    use super::inv_mod;

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(m: &mut Vec<Vec<u64>>, p: u64) -> Vec<usize> {
        let rows = m.len();
        if rows == 0 {
            return Vec::new();
        }
        let cols = m[0].len();
        let mut piv = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(s) = (r..rows).find(|&i| m[i][c] != 0) else {
                continue;
            };
            m.swap(r, s);
            let inv = inv_mod(m[r][c], p);
            for x in m[r].iter_mut() {
                *x = *x * inv % p;
            }
            for i in 0..rows {
                if i != r && m[i][c] != 0 {
                    let f = m[i][c];
                    for j in 0..cols {
                        m[i][j] = (m[i][j] + p - f * m[r][j] % p) % p;
                    }
                }
            }
            piv.push(c);
            r += 1;
        }
        m.truncate(r);
        piv
    }

    /// Basis of the right null space `{v : M v = 0}`.
    pub fn nullspace(m: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
        let cols = m.first().map_or(0, |r| r.len());
        let mut a = m.to_vec();
        let piv = rref(&mut a, p);
        let mut out = Vec::new();
        for free in (0..cols).filter(|c| !piv.contains(c)) {
            let mut v = vec![0u64; cols];
            v[free] = 1;
            for (r, &pc) in piv.iter().enumerate() {
                v[pc] = (p - a[r][free]) % p;
            }
            out.push(v);
        }
        out
    }

    /// Characteristic polynomial `det(x I - M)`, constant term first.
    pub fn charpoly(m: &[Vec<u64>], p: u64) -> Vec<u64> {
        let n = m.len();
        let mut h: Vec<Vec<u64>> = m.to_vec();
        // reduce to upper Hessenberg form by similarity
        for c in 0..n.saturating_sub(2) {
            let Some(piv) = (c + 1..n).find(|&r| h[r][c] != 0) else {
                continue;
            };
            if piv != c + 1 {
                h.swap(piv, c + 1);
                for row in h.iter_mut() {
                    row.swap(piv, c + 1);
                }
            }
            let inv = inv_mod(h[c + 1][c], p);
            for r in c + 2..n {
                let f = h[r][c] * inv % p;
                if f == 0 {
                    continue;
                }
                for j in 0..n {
                    h[r][j] = (h[r][j] + p - f * h[c + 1][j] % p) % p;
                }
                for row in h.iter_mut() {
                    row[c + 1] = (row[c + 1] + f * row[r]) % p;
                }
            }
        }
        // recurrence on leading principal minors
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for k in 0..n {
            // (x - h[k][k]) * P_k
            let prev = &polys[k];
            let mut next = vec![0u64; prev.len() + 1];
            for (i, &c) in prev.iter().enumerate() {
                next[i + 1] = (next[i + 1] + c) % p;
                next[i] = (next[i] + p - c * h[k][k] % p) % p;
            }
            let mut prod = 1u64;
            for i in (0..k).rev() {
                prod = prod * h[i + 1][i] % p;
                let coef = h[i][k] * prod % p;
                if coef == 0 {
                    continue;
                }
                for (j, &c) in polys[i].iter().enumerate() {
                    next[j] = (next[j] + p - coef * c % p) % p;
                }
            }
            polys.push(next);
        }
        polys.pop().unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roots_of_split_polynomial() {
        let p = 97;
        // (x-3)(x-5)(x-90)
        let f = poly::mul(&poly::mul(&[p - 3, 1], &[p - 5, 1], p), &[p - 90, 1], p);
        assert_eq!(poly::roots(&f, p), vec![3, 5, 90]);
        assert_eq!(poly::roots(&[1, 0, 1], 103), Vec::<u64>::new());
    }

    #[test]
    fn charpoly_matches_trace_and_det() {
        let p = 101;
        let m = vec![vec![2, 1, 0], vec![3, 4, 5], vec![6, 0, 7]];
        let cp = mat::charpoly(&m, p);
        assert_eq!(cp[3], 1);
        assert_eq!(cp[2], (p - 13) % p);
        // det = 2*(28) - 1*(21-30) = 56 + 9 = 65
        assert_eq!(cp[0], (p - 65) % p);
    }

    #[test]
    fn nullspace_dimension() {
        let p = 7;
        let m = vec![vec![1, 2, 3], vec![2, 4, 6]];
        let ns = mat::nullspace(&m, p);
        assert_eq!(ns.len(), 2);
        for v in ns {
            assert_eq!((v[0] + 2 * v[1] + 3 * v[2]) % p, 0);
        }
    }
}
