//! Words in a free group on generators `1..=n`. A letter `k > 0` is a
//! generator and `-k` its inverse.

pub type Letter = i32;
pub type Word = Vec<Letter>;

/// Freely reduce a word.
pub fn reduce(w: &[Letter]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &l in w {
        if out.last() == Some(&-l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    out
}

pub fn inverse(w: &[Letter]) -> Word {
    w.iter().rev().map(|l| -l).collect()
}

/// Free and cyclic reduction.
pub fn cyclic_reduce(w: &[Letter]) -> Word {
    let r = reduce(w);
    let mut i = 0;
    let mut j = r.len();
    while j - i >= 2 && r[i] == -r[j - 1] {
        i += 1;
        j -= 1;
    }
    r[i..j].to_vec()
}

pub fn is_cyclically_reduced(w: &[Letter]) -> bool {
    w.windows(2).all(|p| p[0] != -p[1]) && (w.len() < 2 || w[0] != -w[w.len() - 1])
}

// 1 < -1 < 2 < -2 < ...
fn key(l: Letter) -> u32 {
    2 * (l.unsigned_abs() - 1) + u32::from(l < 0)
}

/// Start index of the lexicographically least rotation (Booth).
pub fn least_rotation(w: &[Letter]) -> usize {
    let n = w.len();
    if n == 0 {
        return 0;
    }
    let s: Vec<u32> = w.iter().chain(w.iter()).map(|&l| key(l)).collect();
    let mut f = vec![-1i64; 2 * n];
    let mut k = 0usize;
    for j in 1..2 * n {
        let sj = s[j];
        let mut i = f[j - k - 1];
        while i != -1 && sj != s[k + i as usize + 1] {
            if sj < s[k + i as usize + 1] {
                k = j - i as usize - 1;
            }
            i = f[i as usize];
        }
        if i == -1 && sj != s[k] {
            if sj < s[k] {
                k = j;
            }
            f[j - k] = -1;
        } else {
            f[j - k] = i + 1;
        }
    }
    k % n
}

pub fn rotate(w: &[Letter], k: usize) -> Word {
    let mut out = w[k..].to_vec();
    out.extend_from_slice(&w[..k]);
    out
}

fn cmp_words(a: &[Letter], b: &[Letter]) -> std::cmp::Ordering {
    a.iter().map(|&l| key(l)).cmp(b.iter().map(|&l| key(l)))
}

/// Canonical representative of the unoriented conjugacy class: the least
/// rotation of the cyclically reduced word or of its inverse.
pub fn canonical_class(w: &[Letter]) -> Word {
    let c = cyclic_reduce(w);
    if c.is_empty() {
        return c;
    }
    let r1 = rotate(&c, least_rotation(&c));
    let inv = inverse(&c);
    let r2 = rotate(&inv, least_rotation(&inv));
    if cmp_words(&r2, &r1) == std::cmp::Ordering::Less {
        r2
    } else {
        r1
    }
}

/// Smallest `d` with `w = u^(len/d)` for a word `u` of length `d`.
pub fn primitive_period(w: &[Letter]) -> usize {
    let n = w.len();
    (1..=n)
        .filter(|d| n % d == 0)
        .find(|&d| (d..n).all(|i| w[i] == w[i - d]))
        .unwrap_or(n)
}

pub fn is_proper_power(w: &[Letter]) -> bool {
    !w.is_empty() && primitive_period(w) < w.len()
}

/// Exponent sums of generators 1 and 2.
pub fn abelianization2(w: &[Letter]) -> (i64, i64) {
    let mut p = 0;
    let mut q = 0;
    for &l in w {
        match l {
            1 => p += 1,
            -1 => p -= 1,
            2 => q += 1,
            -2 => q -= 1,
            _ => {}
        }
    }
    (p, q)
}

/// Lower Christoffel word of slope `(p, q)` in generators 1 (`A`) and 2
/// (`B`); negative components use inverse letters.
pub fn christoffel(p: i64, q: i64) -> Word {
    let (pa, qa) = (p.unsigned_abs(), q.unsigned_abs());
    let n = pa + qa;
    let a = if p < 0 { -1 } else { 1 };
    let b = if q < 0 { -2 } else { 2 };
    (1..=n)
        .map(|i| {
            if (i * qa) / n > ((i - 1) * qa) / n {
                b
            } else {
                a
            }
        })
        .collect()
}

/// True when a cyclic word in two generators is conjugate (up to inversion)
/// to the Christoffel word of its abelianization, i.e. represents a simple
/// closed curve on the one-holed torus.
pub fn is_torus_simple(w: &[Letter]) -> bool {
    let (p, q) = abelianization2(w);
    if p == 0 && q == 0 {
        return false;
    }
    if gcd(p.unsigned_abs(), q.unsigned_abs()) != 1 {
        return false;
    }
    canonical_class(w) == canonical_class(&christoffel(p, q))
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Render with `A B C ...` for generators and lowercase for inverses.
pub fn to_letters(w: &[Letter]) -> String {
    w.iter()
        .map(|&l| {
            let c = (b'A' + (l.unsigned_abs() - 1) as u8) as char;
            if l < 0 {
                c.to_ascii_lowercase()
            } else {
                c
            }
        })
        .collect()
}

pub fn from_letters(s: &str) -> Option<Word> {
    s.chars()
        .map(|c| {
            if c.is_ascii_uppercase() {
                Some((c as u8 - b'A' + 1) as Letter)
            } else if c.is_ascii_lowercase() {
                Some(-((c as u8 - b'a' + 1) as Letter))
            } else {
                None
            }
        })
        .collect()
}

/// Replace generator `k` by `images[k - 1]` and reduce.
pub fn substitute(w: &[Letter], images: &[Word]) -> Word {
    let mut out = Word::new();
    for &l in w {
        let img = &images[(l.unsigned_abs() - 1) as usize];
        if l > 0 {
            out.extend_from_slice(img);
        } else {
            out.extend(inverse(img));
        }
    }
    reduce(&out)
}

/// For a basis `(u, v)` of the free group on `1, 2`, the generators `1` and
/// `2` as words in `u` (letter 1) and `v` (letter 2). `None` when Nielsen
/// reduction gets stuck, which happens only for non-bases.
pub fn invert_basis(basis: &[Word; 2]) -> Option<[Word; 2]> {
    // pairs (element in the old letters, same element in the new letters)
    let mut pair = [(reduce(&basis[0]), vec![1]), (reduce(&basis[1]), vec![2])];
    let mut seen = std::collections::HashSet::new();
    loop {
        let total = pair[0].0.len() + pair[1].0.len();
        if pair[0].0.len() == 1 && pair[1].0.len() == 1 {
            let mut out = [Word::new(), Word::new()];
            for (old, new) in &pair {
                let l = old[0];
                let slot = (l.unsigned_abs() - 1) as usize;
                if slot > 1 || !out[slot].is_empty() {
                    return None;
                }
                out[slot] = if l > 0 { new.clone() } else { inverse(new) };
            }
            return Some(out);
        }
        if !seen.insert(pair.clone()) || total > 100_000 {
            return None;
        }
        let mut best: Option<[(Word, Word); 2]> = None;
        for i in 0..2 {
            let other = &pair[1 - i];
            for sign in [false, true] {
                let (ow, nw) = if sign { (inverse(&other.0), inverse(&other.1)) } else { other.clone() };
                for left in [false, true] {
                    let mut next = pair.clone();
                    let (o, n) = &pair[i];
                    next[i] = if left {
                        (reduce(&[ow.clone(), o.clone()].concat()), reduce(&[nw.clone(), n.clone()].concat()))
                    } else {
                        (reduce(&[o.clone(), ow.clone()].concat()), reduce(&[n.clone(), nw.clone()].concat()))
                    };
                    let len = next[0].0.len() + next[1].0.len();
                    if next[i].0.is_empty() {
                        continue;
                    }
                    if best.as_ref().is_none_or(|b| len < b[0].0.len() + b[1].0.len()) {
                        best = Some(next);
                    }
                }
            }
        }
        let next = best?;
        if next[0].0.len() + next[1].0.len() > total {
            return None;
        }
        pair = next;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverts_nielsen_bases() {
        // bases reached from (1, 2) by chains of Nielsen moves
        let mut state = 12345u64;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 33) as usize
        };
        for _ in 0..200 {
            let mut b: [Word; 2] = [vec![1], vec![2]];
            for _ in 0..next() % 12 {
                let i = next() % 2;
                let o = if next() % 2 == 0 { b[1 - i].clone() } else { inverse(&b[1 - i]) };
                b[i] = if next() % 2 == 0 { reduce(&[b[i].clone(), o].concat()) } else { reduce(&[o, b[i].clone()].concat()) };
            }
            let inv = invert_basis(&b).unwrap_or_else(|| panic!("{b:?}"));
            assert_eq!(substitute(&inv[0], &b), vec![1]);
            assert_eq!(substitute(&inv[1], &b), vec![2]);
        }
        assert!(invert_basis(&[vec![1, 1], vec![2]]).is_none());
    }
    use proptest::prelude::*;

    fn naive_least(w: &[Letter]) -> Word {
        (0..w.len()).map(|k| rotate(w, k)).min_by(|a, b| cmp_words(a, b)).unwrap()
    }

    #[test]
    fn reductions() {
        assert_eq!(reduce(&[1, 2, -2, -1, 3]), vec![3]);
        assert_eq!(cyclic_reduce(&[-1, 2, 3, 1]), vec![2, 3]);
        assert!(is_cyclically_reduced(&[1, 2, -1, -2]));
        assert!(!is_cyclically_reduced(&[1, 2, -1]));
    }

    #[test]
    fn christoffel_words() {
        assert_eq!(to_letters(&christoffel(1, 0)), "A");
        assert_eq!(to_letters(&christoffel(1, 1)), "AB");
        assert_eq!(to_letters(&christoffel(2, 1)), "AAB");
        assert_eq!(to_letters(&christoffel(3, 2)), "AABAB");
        assert_eq!(to_letters(&christoffel(1, -1)), "Ab");
        assert!(is_torus_simple(&from_letters("ABAAB").unwrap()));
        assert!(!is_torus_simple(&from_letters("AABB").unwrap()));
        assert!(!is_torus_simple(&from_letters("ABab").unwrap()));
    }

    #[test]
    fn powers() {
        assert!(is_proper_power(&[1, 2, 1, 2]));
        assert!(!is_proper_power(&[1, 2, 2]));
        assert_eq!(primitive_period(&[1, 1, 1]), 1);
    }

    proptest! {
        #[test]
        fn booth_matches_naive(w in proptest::collection::vec(prop_oneof![Just(1), Just(-1), Just(2), Just(-2), Just(3)], 1..24)) {
            let r = rotate(&w, least_rotation(&w));
            prop_assert_eq!(r, naive_least(&w));
        }

        #[test]
        fn canonical_is_class_invariant(w in proptest::collection::vec(prop_oneof![Just(1), Just(-1), Just(2), Just(-2)], 1..20), k in 0usize..20) {
            let c = cyclic_reduce(&w);
            prop_assume!(!c.is_empty());
            let rot = rotate(&c, k % c.len());
            prop_assert_eq!(canonical_class(&rot), canonical_class(&c));
            prop_assert_eq!(canonical_class(&inverse(&c)), canonical_class(&c));
        }

        #[test]
        fn christoffel_abelianizes(p in -12i64..12, q in -12i64..12) {
            prop_assume!(p != 0 || q != 0);
            prop_assert_eq!(abelianization2(&christoffel(p, q)), (p, q));
        }
    }
}
