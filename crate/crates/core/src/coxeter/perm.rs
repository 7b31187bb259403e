//! One-line combinatorics for the classical families.
//!
//! Type A elements are permutations of `0..=p` (displayed 1-based). Types B
//! and D use signed permutations with values in `±1..=±p`; `w(-k) = -w(k)`.

/// `(a·b)(i) = a(b(i))`.
pub fn compose(a: &[u32], b: &[u32]) -> Vec<u32> {
    b.iter().map(|&x| a[x as usize]).collect()
}

pub fn invert(a: &[u32]) -> Vec<u32> {
    let mut inv = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        inv[x as usize] = i as u32;
    }
    inv
}

/// Inversion count, which is the Coxeter length in type A.
pub fn inversions<T: Ord>(a: &[T]) -> usize {
    let mut n = 0;
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if a[i] > a[j] {
                n += 1;
            }
        }
    }
    n
}

pub fn is_permutation(a: &[u32]) -> bool {
    let mut seen = vec![false; a.len()];
    a.iter().all(|&x| {
        let x = x as usize;
        x < seen.len() && !std::mem::replace(&mut seen[x], true)
    })
}

/// Number of `i` with `a[i] > a[i+1]`.
pub fn adjacent_descents<T: Ord>(a: &[T]) -> usize {
    a.windows(2).filter(|w| w[0] > w[1]).count()
}

pub fn signed_compose(a: &[i32], b: &[i32]) -> Vec<i32> {
    b.iter()
        .map(|&x| {
            let v = a[(x.unsigned_abs() - 1) as usize];
            if x < 0 {
                -v
            } else {
                v
            }
        })
        .collect()
}

pub fn signed_invert(a: &[i32]) -> Vec<i32> {
    let mut inv = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        let pos = i as i32 + 1;
        inv[(x.unsigned_abs() - 1) as usize] = if x < 0 { -pos } else { pos };
    }
    inv
}

pub fn is_signed_permutation(a: &[i32]) -> bool {
    let mut seen = vec![false; a.len()];
    a.iter().all(|&x| {
        let k = x.unsigned_abs() as usize;
        x != 0 && k <= seen.len() && !std::mem::replace(&mut seen[k - 1], true)
    })
}

pub fn negative_count(a: &[i32]) -> usize {
    a.iter().filter(|&&x| x < 0).count()
}

/// `#{i < j : a[i] + a[j] < 0}`.
pub fn negative_sum_pairs(a: &[i32]) -> usize {
    let mut n = 0;
    for i in 0..a.len() {
        for j in i + 1..a.len() {
            if a[i] + a[j] < 0 {
                n += 1;
            }
        }
    }
    n
}

/// Coxeter length in type B: `inv + neg + nsp`.
pub fn length_b(a: &[i32]) -> usize {
    inversions(a) + negative_count(a) + negative_sum_pairs(a)
}

/// Coxeter length in type D: `inv + nsp`.
pub fn length_d(a: &[i32]) -> usize {
    inversions(a) + negative_sum_pairs(a)
}

/// Right descents in type B (generator 0 is the sign change at position 0).
pub fn descents_b(a: &[i32]) -> impl Iterator<Item = usize> + '_ {
    let first = (a[0] < 0).then_some(0);
    first
        .into_iter()
        .chain((1..a.len()).filter(move |&i| a[i - 1] > a[i]))
}

/// Right descents in type D (generator 0 is the swap-and-negate of
/// positions 0 and 1).
pub fn descents_d(a: &[i32]) -> impl Iterator<Item = usize> + '_ {
    let first = (a[0] + a[1] < 0).then_some(0);
    first
        .into_iter()
        .chain((1..a.len()).filter(move |&i| a[i - 1] > a[i]))
}

pub fn des_b(a: &[i32]) -> usize {
    (a[0] < 0) as usize + adjacent_descents(a)
}

pub fn des_d(a: &[i32]) -> usize {
    (a[0] + a[1] < 0) as usize + adjacent_descents(a)
}

/// Rearranges `a` into the next permutation in lexicographic order. Returns
/// `false` (leaving `a` sorted ascending) after the last one.
pub fn next_permutation<T: Ord>(a: &mut [T]) -> bool {
    if a.len() < 2 {
        return false;
    }
    let mut i = a.len() - 1;
    while i > 0 && a[i - 1] >= a[i] {
        i -= 1;
    }
    if i == 0 {
        a.reverse();
        return false;
    }
    let mut j = a.len() - 1;
    while a[j] <= a[i - 1] {
        j -= 1;
    }
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Calls `f` on every permutation of `0..n` in lexicographic order.
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[u32])) {
    let mut a: Vec<u32> = (0..n as u32).collect();
    loop {
        f(&a);
        if !next_permutation(&mut a) {
            break;
        }
    }
}

/// Calls `f` on every signed permutation of `1..=n`; with `even_only`, only
/// those with an even number of negative entries.
pub fn for_each_signed_permutation(n: usize, even_only: bool, mut f: impl FnMut(&[i32])) {
    let mut buf = vec![0i32; n];
    for_each_permutation(n, |p| {
        for mask in 0u64..(1u64 << n) {
            if even_only && mask.count_ones() % 2 == 1 {
                continue;
            }
            for (i, &x) in p.iter().enumerate() {
                let v = x as i32 + 1;
                buf[i] = if mask >> i & 1 == 1 { -v } else { v };
            }
            f(&buf);
        }
    });
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_cycle() {
        // [2,3,1] -> [3,1,2] in 1-based one-line notation
        assert_eq!(invert(&[1, 2, 0]), vec![2, 0, 1]);
        assert_eq!(compose(&[1, 2, 0], &invert(&[1, 2, 0])), vec![0, 1, 2]);
    }

    #[test]
    fn signed_inverse_roundtrip() {
        let a = [-3, 1, -2];
        let inv = signed_invert(&a);
        assert_eq!(signed_compose(&a, &inv), vec![1, 2, 3]);
        assert_eq!(signed_compose(&inv, &a), vec![1, 2, 3]);
    }

    #[test]
    fn enumeration_counts() {
        let mut n = 0;
        for_each_permutation(5, |_| n += 1);
        assert_eq!(n, 120);
        let mut b = 0;
        for_each_signed_permutation(3, false, |_| b += 1);
        assert_eq!(b, 48);
        let mut d = 0;
        for_each_signed_permutation(4, true, |w| {
            assert_eq!(negative_count(w) % 2, 0);
            d += 1
        });
        assert_eq!(d, 192);
    }

    #[test]
    fn validity_checks() {
        assert!(is_permutation(&[2, 0, 1]));
        assert!(!is_permutation(&[2, 2, 1]));
        assert!(!is_permutation(&[3, 0, 1]));
        assert!(is_signed_permutation(&[-2, 1]));
        assert!(!is_signed_permutation(&[2, -2]));
        assert!(!is_signed_permutation(&[0, 1]));
    }

    #[test]
    fn longest_elements() {
        assert_eq!(inversions(&[2u32, 1, 0]), 3);
        // B_n longest element -id has length n^2
        assert_eq!(length_b(&[-1, -2, -3]), 9);
        // D_n longest element has length n(n-1)
        assert_eq!(length_d(&[-1, -2, -3, -4]), 12);
    }
}
