//! Cross-checks of the root-permutation machinery against plain one-line
//! permutations of `1..=n`: lengths, compact lengths, covers, cosets, `D`,
//! and whole tables rebuilt from scratch.

use std::collections::{BTreeMap, BTreeSet};

use proptest::prelude::*;
use soergel_core::bggsign::SignChoice;
use soergel_core::complex::{build_complex, homology};
use soergel_core::soergel::{compute_a, compute_d, soergel_table, CharacterSpec, Engine};
use soergel_core::theorems::all_patterns;
use soergel_core::{build_type_a, CompactSubsystem, Subset, Weight, WeylGroup};

type Perm = Vec<usize>;

fn one_line_map(w: &WeylGroup) -> (Vec<Perm>, BTreeMap<Perm, usize>) {
    let perms: Vec<Perm> = (0..w.order()).map(|x| w.one_line(x).unwrap()).collect();
    let index = perms.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    (perms, index)
}

fn inversions(p: &[usize]) -> usize {
    (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count()
}

fn inverse(p: &[usize]) -> Perm {
    let mut inv = vec![0; p.len()];
    for (i, &v) in p.iter().enumerate() {
        inv[v - 1] = i + 1;
    }
    inv
}

/// `(a o b)(i) = a(b(i))`.
fn compose(a: &[usize], b: &[usize]) -> Perm {
    b.iter().map(|&v| a[v - 1]).collect()
}

/// `#{a < b : same sign, w^{-1}(a) > w^{-1}(b)}`.
fn compact_inversions(p: &[usize], signs: &[char]) -> usize {
    let inv = inverse(p);
    let n = p.len();
    (0..n)
        .flat_map(|a| (a + 1..n).map(move |b| (a, b)))
        .filter(|&(a, b)| signs[a] == signs[b] && inv[a] > inv[b])
        .count()
}

fn transposition(n: usize, a: usize, b: usize) -> Perm {
    let mut t: Perm = (1..=n).collect();
    t.swap(a, b);
    t
}

fn group(n: usize) -> WeylGroup {
    WeylGroup::generate(&build_type_a(n).unwrap()).unwrap()
}

#[test]
fn lengths_and_compact_lengths() {
    for n in 1..=5 {
        let w = group(n);
        let (perms, _) = one_line_map(&w);
        assert_eq!(perms.iter().collect::<BTreeSet<_>>().len(), w.order());
        for pattern in all_patterns(n) {
            let signs: Vec<char> = pattern.chars().collect();
            let k = CompactSubsystem::from_signature(w.root_system(), &pattern).unwrap();
            let lk = w.compact_lengths(&k).unwrap();
            for x in 0..w.order() {
                assert_eq!(w.length(x), inversions(&perms[x]));
                assert_eq!(lk[x], compact_inversions(&perms[x], &signs), "n={n} {pattern} {:?}", perms[x]);
            }
        }
    }
}

#[test]
fn group_law_matches_composition() {
    let w = group(4);
    let (perms, index) = one_line_map(&w);
    for a in 0..w.order() {
        assert_eq!(index[&inverse(&perms[a])], w.inverse(a));
        for b in 0..w.order() {
            assert_eq!(index[&compose(&perms[a], &perms[b])], w.mul(a, b));
        }
    }
    let reversal: Perm = (1..=4).rev().collect();
    assert_eq!(perms[w.w0()], reversal);
}

#[test]
fn covers_are_transposition_steps() {
    for n in 1..=5 {
        let w = group(n);
        let (perms, index) = one_line_map(&w);
        let mut expected = BTreeSet::new();
        for (y, py) in perms.iter().enumerate() {
            for a in 0..n {
                for b in a + 1..n {
                    let x = compose(&transposition(n, a, b), py);
                    if inversions(&x) == inversions(py) + 1 {
                        expected.insert((index[&x], y));
                    }
                }
            }
        }
        let got: BTreeSet<(usize, usize)> = w.covers().iter().map(|c| (c.upper, c.lower)).collect();
        assert_eq!(got, expected, "n={n}");
    }
}

/// `W_K x` as the permutations `k o x` with `k` preserving the sign classes.
fn coset_oracle(perms: &[Perm], index: &BTreeMap<Perm, usize>, signs: &[char], x: usize) -> BTreeSet<usize> {
    perms
        .iter()
        .filter(|k| k.iter().enumerate().all(|(i, &v)| signs[v - 1] == signs[i]))
        .map(|k| index[&compose(k, &perms[x])])
        .collect()
}

/// `w` with `v_{w(i)} >= v_{w(i+1)}` for `v = lambda + rho`.
fn d_oracle(perms: &[Perm], shifted: &[i64]) -> BTreeSet<usize> {
    (0..perms.len()).filter(|&x| perms[x].windows(2).all(|p| shifted[p[0] - 1] >= shifted[p[1] - 1])).collect()
}

fn doubled_rho(n: usize) -> Vec<i64> {
    (0..n as i64).map(|i| n as i64 - 1 - 2 * i).collect()
}

#[test]
fn cosets_and_d_sets() {
    for n in 1..=4 {
        let w = group(n);
        let (perms, index) = one_line_map(&w);
        for pattern in all_patterns(n) {
            let signs: Vec<char> = pattern.chars().collect();
            let k = CompactSubsystem::from_signature(w.root_system(), &pattern).unwrap();
            for x in 0..w.order() {
                let a = compute_a(&w, &k, x).unwrap();
                let expected = coset_oracle(&perms, &index, &signs, x);
                assert_eq!(a.coset.members().iter().copied().collect::<BTreeSet<_>>(), expected);
                assert_eq!(a.rep, *expected.iter().min_by_key(|&&y| (inversions(&perms[y]), y)).unwrap());
            }
        }
        // lambda + rho = e_1 + ... + e_i, and 0, and rho
        let mut shifts: Vec<Vec<i64>> = (0..=n).map(|i| (0..n).map(|j| i64::from(j < i)).collect()).collect();
        shifts.push(doubled_rho(n));
        for shifted in shifts {
            let two_rho = doubled_rho(n);
            // lambda = shifted - rho, built over 2 to stay integral
            let text: Vec<String> = shifted.iter().zip(&two_rho).map(|(s, r)| format!("{}/2", 2 * s - r)).collect();
            let lambda = soergel_core::parse::parse_weight(&text.join(",")).unwrap();
            let d = compute_d(&w, &lambda).unwrap();
            assert_eq!(d.members().iter().copied().collect::<BTreeSet<_>>(), d_oracle(&perms, &shifted));
        }
    }
}

/// The table rebuilt from the oracle sets, using the library only for
/// the homology of each stratum.
fn oracle_table(engine: &Engine, pattern: &str, x: usize, shifted: &[i64]) -> Vec<usize> {
    let w = engine.weyl();
    let n = w.root_system().ambient_dim();
    let big_n = w.root_system().num_positive();
    let (perms, index) = one_line_map(w);
    let signs: Vec<char> = pattern.chars().collect();
    let a = coset_oracle(&perms, &index, &signs, x);
    let d = d_oracle(&perms, shifted);
    let dim_q = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).filter(|&(i, j)| signs[i] == signs[j]).count();
    let mut strata: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for &y in a.intersection(&d) {
        let c = inversions(&perms[y]) - compact_inversions(&perms[y], &signs);
        strata.entry(c).or_default().push(y);
    }
    let mut dims = vec![0; big_n + 1];
    for (c, members) in strata {
        let complex = build_complex(w, &Subset::from_ids(w, members), engine.signs()).unwrap();
        for (k, &h) in homology(&complex).dims().iter().enumerate() {
            if h > 0 {
                dims[2 * c + dim_q - k] += h;
            }
        }
    }
    dims
}

fn lambda_from_shift(shifted: &[i64]) -> Weight {
    let n = shifted.len();
    let text: Vec<String> = shifted.iter().zip(doubled_rho(n)).map(|(s, r)| format!("{}/2", 2 * s - r)).collect();
    soergel_core::parse::parse_weight(&text.join(",")).unwrap()
}

#[test]
fn tables_match_oracle_assembly() {
    for n in 1..=4 {
        let engine = Engine::new(&build_type_a(n).unwrap()).unwrap();
        let w = engine.weyl();
        for pattern in all_patterns(n) {
            let k = CompactSubsystem::from_signature(w.root_system(), &pattern).unwrap();
            for x in 0..w.order() {
                for shifted in [vec![0; n], (0..n).map(|j| i64::from(j == 0)).collect::<Vec<_>>()] {
                    let orbit = compute_a(w, &k, x).unwrap();
                    let ch = CharacterSpec::new(w.root_system(), lambda_from_shift(&shifted)).unwrap();
                    let t = soergel_table(&engine, &k, &orbit, &ch).unwrap();
                    assert_eq!(t.dims, oracle_table(&engine, &pattern, x, &shifted), "n={n} {pattern} x={x}");
                }
            }
        }
    }
}

/// Dominant `lambda + rho` in type A: a weakly decreasing integer vector.
fn dominant_shift(n: usize) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(0i64..3, n).prop_map(|steps| {
        let mut acc = 0;
        let mut out: Vec<i64> = steps
            .iter()
            .map(|s| {
                acc += s;
                acc
            })
            .collect();
        out.reverse();
        out
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn serre_duality_and_sign_independence(
        n in 2usize..=4,
        pattern_bits in any::<u8>(),
        rep_seed in any::<u16>(),
        shifted in dominant_shift(4),
        seed in any::<u64>()
    ) {
        let shifted = &shifted[..n];
        let rs = build_type_a(n).unwrap();
        let canonical = Engine::new(&rs).unwrap();
        let random = Engine::with_signs(&rs, SignChoice::Random(seed)).unwrap();
        let w = canonical.weyl();
        let pattern: String = (0..n).map(|i| if pattern_bits >> i & 1 == 1 { '-' } else { '+' }).collect();
        let k = CompactSubsystem::from_signature(&rs, &pattern).unwrap();
        let x = rep_seed as usize % w.order();
        let orbit = compute_a(w, &k, x).unwrap();
        let ch = CharacterSpec::new(&rs, lambda_from_shift(shifted)).unwrap();
        let t = soergel_table(&canonical, &k, &orbit, &ch).unwrap();
        let t_random = soergel_table(&random, &k, &orbit, &ch).unwrap();
        prop_assert_eq!(&t.dims, &t_random.dims);
        let (orbit_op, ch_op) = soergel_core::soergel::opposite(w, &k, &orbit, &ch).unwrap();
        let t_op = soergel_table(&canonical, &k, &orbit_op, &ch_op).unwrap();
        prop_assert_eq!(t.reversed(), t_op.dims);
        let a_cap_d = orbit.coset.intersection(&compute_d(w, &ch.lambda).unwrap()).len();
        prop_assert!(t.total() <= a_cap_d);
    }
}
