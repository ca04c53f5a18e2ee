//! Exhaustive checks of the structural properties at small sizes.

use std::collections::BTreeSet;

use ascent_dyck::paths::{DyckPath, Step, StepRef};
use ascent_dyck::sequences::{ascent_count, Entry};
use ascent_dyck::verify::ascent_sequences_bounded;
use ascent_dyck::*;

// Catalan numbers from the convolution recurrence, written out independently
// of the library.
fn catalan_oracle(n: usize) -> u64 {
    let mut c = vec![1u64];
    for m in 1..=n {
        c.push((0..m).map(|k| c[k] * c[m - 1 - k]).sum());
    }
    c[n]
}

// All step strings of length 2n filtered for validity.
fn brute_force_paths(n: usize) -> Vec<String> {
    let mut out = Vec::new();
    for bits in 0u32..(1 << (2 * n)) {
        let s: String = (0..2 * n)
            .rev()
            .map(|i| if bits >> i & 1 == 1 { 'D' } else { 'U' })
            .collect();
        if parse_path(&s).is_ok() {
            out.push(s);
        }
    }
    // U < D
    out.sort_by_key(|s| s.chars().map(|c| c == 'D').collect::<Vec<_>>());
    out
}

#[test]
fn catalan_counts_up_to_twelve() {
    let expected = [1, 2, 5, 14, 42, 132, 429, 1430, 4862, 16796, 58786, 208012];
    for n in 1..=12 {
        assert_eq!(catalan_oracle(n), expected[n - 1]);
        assert_eq!(catalan_u64(n), expected[n - 1]);
        assert_eq!(
            enumerate_021_avoiding(n).unwrap().count() as u64,
            expected[n - 1],
            "n = {n}"
        );
        assert_eq!(
            enumerate_dyck_paths(n).unwrap().count() as u64,
            expected[n - 1],
            "n = {n}"
        );
    }
}

#[test]
fn enumeration_is_lexicographic_and_valid() {
    for n in 1..=9 {
        let all: Vec<_> = enumerate_021_avoiding(n).unwrap().collect();
        for w in all.windows(2) {
            assert!(w[0] < w[1]);
        }
        for s in &all {
            assert!(validate_ascent_sequence(s.entries().to_vec()).is_ok());
            assert!(is_021_avoiding(s));
        }
    }
}

#[test]
fn sequence_enumeration_matches_brute_filter() {
    for n in 1..=7 {
        let brute: Vec<Vec<Entry>> = ascent_sequences_bounded(n, n as Entry)
            .into_iter()
            .filter(|v| v.len() == n && !contains_pattern_021_bruteforce(v))
            .collect();
        let got: Vec<Vec<Entry>> = enumerate_021_avoiding(n)
            .unwrap()
            .map(|s| s.into_entries())
            .collect();
        assert_eq!(got, brute, "n = {n}");
    }
}

#[test]
fn path_enumeration_matches_brute_force() {
    for n in 1..=6 {
        let got: Vec<String> = enumerate_dyck_paths(n)
            .unwrap()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(got, brute_force_paths(n), "n = {n}");
    }
}

#[test]
fn characterization_up_to_eight() {
    for raw in ascent_sequences_bounded(8, 8) {
        let s = validate_ascent_sequence(raw.clone()).unwrap();
        assert_eq!(
            is_021_avoiding(&s),
            !contains_pattern_021_bruteforce(&raw),
            "{s}"
        );
    }
}

#[test]
fn ascents_bound_the_maximum() {
    for raw in ascent_sequences_bounded(8, 8) {
        let s = validate_ascent_sequence(raw).unwrap();
        assert!(ascent_count(&s) >= s.max_entry() as usize);
    }
}

#[test]
fn next_values_match_brute_force() {
    for len in 1..=8 {
        for prefix in enumerate_021_avoiding(len).unwrap() {
            let a = prefix.ascent_count() as Entry;
            let brute: Vec<Entry> = (0..=a + 2)
                .filter(|&v| {
                    let mut raw = prefix.entries().to_vec();
                    raw.push(v);
                    validate_ascent_sequence(raw.clone()).is_ok()
                        && !contains_pattern_021_bruteforce(&raw)
                })
                .collect();
            assert_eq!(allowable_next_values(&prefix), brute, "prefix {prefix}");
        }
    }
}

#[test]
fn matching_is_a_nested_involution() {
    for n in 1..=8 {
        for p in enumerate_dyck_paths(n).unwrap() {
            let mut intervals = Vec::new();
            for (i, s) in p.steps().iter().enumerate() {
                if *s == Step::Down {
                    let d = StepRef::down(i + 1);
                    let u = p.match_of_downstep(d).unwrap();
                    assert_eq!(p.match_of_upstep(u).unwrap(), d, "{p}");
                    intervals.push((u.index, d.index));
                }
            }
            for &(a, b) in &intervals {
                for &(c, d) in &intervals {
                    let crossing = a < c && c < b && b < d;
                    assert!(!crossing, "{p}: ({a},{b}) crosses ({c},{d})");
                }
            }
            let table = p.matching();
            for &(u, d) in &intervals {
                assert_eq!(table[d - 1], u - 1);
            }
        }
    }
}

#[test]
fn elevation_properties() {
    for n in 1..=10 {
        for p in enumerate_dyck_paths(n).unwrap() {
            if !p.is_pyramid() {
                assert_eq!(p.degree_of_elevation() == Some(0), !p.is_elevated(), "{p}");
            } else {
                assert_eq!(p.degree_of_elevation(), None);
            }
            let up = p.elevate();
            assert_eq!(up.lower().unwrap(), p);
            if p.is_elevated() && n >= 2 {
                assert_eq!(p.lower().unwrap().elevate(), p);
            }
            let desc = p.terminal_descent();
            for k in p.key_downsteps() {
                assert!(desc.contains(&k.index), "{p}");
            }
        }
        assert!(DyckPath::pyramid(n).key_downsteps().is_empty());
    }
}

#[test]
fn text_round_trip() {
    for n in 1..=8 {
        for p in enumerate_dyck_paths(n).unwrap() {
            assert_eq!(parse_path(&p.to_string()).unwrap(), p);
            assert_eq!(parse_path(&p.to_paren_string()).unwrap(), p);
        }
        for s in enumerate_021_avoiding(n).unwrap() {
            assert_eq!(parse_sequence(&s.to_string()).unwrap(), s);
        }
    }
}

#[test]
fn round_trip_and_bijectivity_up_to_ten() {
    for n in 1..=10 {
        let mut images = BTreeSet::new();
        for s in enumerate_021_avoiding(n).unwrap() {
            let p = forward(&s).unwrap();
            assert_eq!(p.size(), n);
            assert_eq!(inverse(&p).unwrap(), s);
            assert_eq!(s.ascent_count(), p.valley_count());
            assert!(images.insert(p));
        }
        let all: BTreeSet<_> = enumerate_dyck_paths(n).unwrap().collect();
        assert_eq!(images, all, "n = {n}");
    }
}

#[test]
fn inverse_cases_partition_paths() {
    for n in 2..=10 {
        for p in enumerate_dyck_paths(n).unwrap() {
            let long = p.last_ascent_length() >= 2;
            let conds = [
                long,
                !long && p.is_elevated(),
                !long && p.ends_with_peak(),
                !long && !p.is_elevated() && !p.ends_with_peak(),
            ];
            assert_eq!(conds.iter().filter(|c| **c).count(), 1, "{p}");
            let case = classify_inverse_case(&p).unwrap();
            assert!(conds[case.id() as usize - 1]);
        }
    }
}

#[test]
fn trace_cases_mirror_each_other() {
    // the inverse trace of forward(s) visits the forward paths in reverse,
    // with the same case at every size
    for s in enumerate_021_avoiding(8).unwrap() {
        let f = forward_trace(&s).unwrap();
        let i = inverse_trace(f.final_path()).unwrap();
        let fwd: Vec<_> = f.records.iter().rev().map(|r| r.case_id).collect();
        let inv: Vec<_> = i.records.iter().map(|r| r.case_id).collect();
        assert_eq!(fwd, inv, "{s}");
        let paths: Vec<_> = f.paths().cloned().collect();
        for (k, r) in i.records.iter().enumerate() {
            assert_eq!(r.path_after, paths[paths.len() - 2 - k]);
        }
        assert_eq!(i.sequence, s);
    }
}
