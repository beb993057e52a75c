//! Acceptance suite. One test per criterion; each prints a single PASS or
//! FAIL line. The brute-force oracles live here, independent of the search
//! implementation they check: candidate vectors come from a plain box scan
//! and tuples are validated directly against the Gram matrix.

#![allow(clippy::needless_range_loop)]

use std::collections::BTreeSet;
use std::panic::{catch_unwind, UnwindSafe};
use std::time::Instant;

use num::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use ygn::lattice::{DiagonalTarget, GramLattice, GramRepresentation};
use ygn::pipeline::{obstruct, theorem_range, Verdict, ORTHOGONALITY_NOTE};
use ygn::search::{
    canonical_orbit_form, find_representations, orbit_count, represents_into_some_diagonal,
    support_bound, MaxSolutions, RepresentationNotion, SearchOptions,
};
use ygn::spinc::{
    c1_circle, contact_spinc, euler_class_xi, spin_structures_circle, spincform_check,
    CircleBundle, ContactStructure, TorsionSpinc,
};
use ygn::topology::{ld_lattice, orthogonality_report, sublattice_from_classes};

fn criterion(number: u32, description: &str, body: impl FnOnce() + UnwindSafe) {
    match catch_unwind(body) {
        Ok(()) => println!("criterion {number} [{description}]: PASS"),
        Err(e) => {
            println!("criterion {number} [{description}]: FAIL");
            std::panic::resume_unwind(e);
        }
    }
}

// ---------------------------------------------------------------- oracles

/// Box-scan generation of all integer vectors of norm `s` in Z^m. Written
/// independently of the library's recursive enumerator.
fn box_norm_vectors(s: i64, m: usize) -> Vec<Vec<i64>> {
    if s < 0 {
        return Vec::new();
    }
    if m == 0 {
        return if s == 0 { vec![vec![]] } else { vec![] };
    }
    let lim = (0..=s).take_while(|c| c * c <= s).last().unwrap_or(0);
    let mut out = Vec::new();
    let mut v = vec![-lim; m];
    loop {
        if v.iter().map(|x| x * x).sum::<i64>() == s {
            out.push(v.clone());
        }
        let mut i = 0;
        loop {
            if i == m {
                return out;
            }
            v[i] += 1;
            if v[i] <= lim {
                break;
            }
            v[i] = -lim;
            i += 1;
        }
    }
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Exact row rank by fraction-free elimination over i128.
fn oracle_rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let cols = a.first().map_or(0, |r| r.len());
    let mut rank = 0usize;
    for col in 0..cols {
        let Some(p) = (rank..a.len()).find(|&r| a[r][col] != 0) else {
            continue;
        };
        a.swap(rank, p);
        for r in (rank + 1)..a.len() {
            if a[r][col] == 0 {
                continue;
            }
            let (num, den) = (a[r][col], a[rank][col]);
            for c in col..cols {
                a[r][c] = a[r][c] * den - a[rank][c] * num;
            }
        }
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    rank
}

/// How many tuples the oracle would enumerate for this lattice and target.
fn oracle_cost(gram: &[Vec<i64>], m: usize) -> u128 {
    let mut cost: u128 = 1;
    for i in 0..gram.len() {
        cost = cost.saturating_mul(box_norm_vectors(-gram[i][i], m).len() as u128);
        if cost == 0 {
            return 0;
        }
    }
    cost
}

/// Unpruned brute force: every tuple of norm vectors, each checked whole
/// against the Gram matrix, optionally filtered to independent rows.
fn oracle_solutions(
    gram: &[Vec<i64>],
    m: usize,
    require_independent: bool,
) -> BTreeSet<Vec<Vec<i64>>> {
    let rank = gram.len();
    let lists: Vec<Vec<Vec<i64>>> = (0..rank)
        .map(|i| box_norm_vectors(-gram[i][i], m))
        .collect();
    let mut out = BTreeSet::new();
    if lists.iter().any(|l| l.is_empty()) {
        return out;
    }
    let mut idx = vec![0usize; rank];
    'outer: loop {
        let tuple: Vec<&Vec<i64>> = (0..rank).map(|i| &lists[i][idx[i]]).collect();
        let mut ok = true;
        'check: for i in 0..rank {
            for j in i..rank {
                if dot(tuple[i], tuple[j]) != -gram[i][j] {
                    ok = false;
                    break 'check;
                }
            }
        }
        if ok && require_independent {
            let rows: Vec<Vec<i64>> = tuple.iter().map(|r| (*r).clone()).collect();
            ok = oracle_rank(&rows) == rank;
        }
        if ok {
            out.insert(tuple.into_iter().cloned().collect());
        }
        let mut i = 0;
        loop {
            if i == rank {
                break 'outer;
            }
            idx[i] += 1;
            if idx[i] < lists[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
    }
    out
}

fn chain(r: usize) -> GramLattice {
    let mut gram = vec![vec![0i64; r]; r];
    for i in 0..r {
        gram[i][i] = -2;
        if i + 1 < r {
            gram[i][i + 1] = 1;
            gram[i + 1][i] = 1;
        }
    }
    GramLattice::new(gram).unwrap()
}

fn random_lattice(rng: &mut StdRng, structured: bool) -> GramLattice {
    let rank = rng.gen_range(1..=4usize);
    let mut gram = vec![vec![0i64; rank]; rank];
    for i in 0..rank {
        for j in i..rank {
            let value = if structured {
                if i == j {
                    rng.gen_range(-3..=-1)
                } else {
                    rng.gen_range(-1..=1)
                }
            } else {
                rng.gen_range(-3..=1)
            };
            gram[i][j] = value;
            gram[j][i] = value;
        }
    }
    GramLattice::new(gram).unwrap()
}

fn solution_set(lattice: &GramLattice, m: usize, opts: &SearchOptions) -> BTreeSet<Vec<Vec<i64>>> {
    find_representations(lattice, DiagonalTarget::new(m), opts)
        .representations()
        .iter()
        .map(|rep| rep.images().to_vec())
        .collect()
}

// --------------------------------------------------------------- criteria

/// Non-embedding sweep: for d in 1..=4 and every m up to the support bound
/// 5d-3 the search exhausts, with the definiteness precheck both on and
/// off, and `embed --any` exits 1. Budget: under 5 minutes.
#[test]
fn criterion_1_nonembedding_sweep() {
    criterion(1, "non-embedding of L_d at desk scale", || {
        let start = Instant::now();
        for d in 1..=4usize {
            let ld = ld_lattice(d);
            let m_star = 5 * d - 3;
            assert_eq!(support_bound(&ld), m_star);
            for m in 0..=m_star {
                let with_precheck = find_representations(
                    &ld,
                    DiagonalTarget::new(m),
                    &SearchOptions::decision(),
                );
                assert!(
                    !with_precheck.found(),
                    "L_{d} unexpectedly embeds into D_{m}"
                );
                let without_precheck = find_representations(
                    &ld,
                    DiagonalTarget::new(m),
                    &SearchOptions {
                        definiteness_precheck: false,
                        ..SearchOptions::default()
                    },
                );
                assert!(
                    !without_precheck.found(),
                    "L_{d} unexpectedly embeds into D_{m} with the precheck disabled"
                );
            }

            // the CLI route: embed --any must exit 1
            let dir = tempfile::tempdir().unwrap();
            let path = dir.path().join(format!("ld{d}.json"));
            std::fs::write(&path, serde_json::to_string(&ld).unwrap()).unwrap();
            let output = std::process::Command::new(env!("CARGO_BIN_EXE_ygn"))
                .args(["embed", path.to_str().unwrap(), "--any"])
                .output()
                .expect("binary runs");
            assert_eq!(
                output.status.code(),
                Some(1),
                "embed --any should exit 1 for L_{d}"
            );
        }
        let elapsed = start.elapsed();
        assert!(
            elapsed.as_secs() < 300,
            "sweep took {elapsed:?}, budget is 5 minutes"
        );
    });
}

/// Positive controls: chains embed with the staircase, and their orbit
/// count is 1, with a brute-force confirmation of the merge at r <= 4.
///
/// The orbit count assertion is stated for every r <= 7. It cannot hold at
/// r = 3: the staircase and the folded representation
/// (e1+e2, -e2+e3, -e1+e2) preserve all pairings of the length-3 chain yet
/// no signed permutation of coordinates relates them (the end images share
/// their support in one and have disjoint supports in the other). The
/// brute-force oracle below confirms exactly 2 orbits at r = 3, so this
/// criterion fails there honestly rather than loosening the assertion.
#[test]
fn criterion_2_chain_positive_controls() {
    criterion(2, "chain controls and orbit uniqueness", || {
        for r in 1..=7usize {
            let a = chain(r);
            let cert =
                find_representations(&a, DiagonalTarget::new(r + 1), &SearchOptions::decision());
            assert!(cert.found(), "A_{r} not found in D_{}", r + 1);
            let rep = &cert.representations()[0];
            assert!(a.verify_representation(rep).unwrap());

            // the staircase is valid and its orbit is reached by the search
            let mut staircase = vec![vec![0i64; r + 1]; r];
            for i in 0..r {
                staircase[i][i] = 1;
                staircase[i][i + 1] = -1;
            }
            let staircase = GramRepresentation::new(staircase, r + 1).unwrap();
            assert!(a.verify_representation(&staircase).unwrap());
            let all =
                find_representations(&a, DiagonalTarget::new(r + 1), &SearchOptions::enumerate_all());
            let forms: BTreeSet<Vec<Vec<i64>>> = all
                .representations()
                .iter()
                .map(canonical_orbit_form)
                .collect();
            assert!(
                forms.contains(&canonical_orbit_form(&staircase)),
                "staircase orbit not reached for A_{r}"
            );
        }

        // brute-force confirmation of the orbit merge at r <= 4
        for r in 1..=4usize {
            let a = chain(r);
            let oracle_orbits: BTreeSet<Vec<Vec<i64>>> = oracle_solutions(a.gram(), r + 1, true)
                .iter()
                .map(|rows| {
                    let rep = GramRepresentation::new(rows.clone(), r + 1).unwrap();
                    canonical_orbit_form(&rep)
                })
                .collect();
            assert_eq!(
                oracle_orbits.len() as u64,
                orbit_count(&a, DiagonalTarget::new(r + 1)),
                "orbit merge mismatch at r = {r}"
            );
        }

        // orbit uniqueness as stated, checked for every r before judging
        let violations: Vec<(usize, u64)> = (1..=7usize)
            .map(|r| (r, orbit_count(&chain(r), DiagonalTarget::new(r + 1))))
            .filter(|&(_, count)| count != 1)
            .collect();
        assert!(
            violations.is_empty(),
            "orbit_count(A_r, D_r+1) = 1 fails at {violations:?}; the length 3 chain \
             has exactly 2 classes, the staircase and the folded representation \
             (e1+e2, -e2+e3, -e1+e2), which no signed permutation of coordinates \
             relates (the end images share their support in one and have disjoint \
             supports in the other); the brute-force merge above reports the same \
             count, so the stated value cannot be met"
        );
    });
}

/// Oracle equivalence on 200 random lattices: existence agreement with the
/// unpruned brute force, and full solution set agreement with
/// canonicalization off, under both representation notions.
#[test]
fn criterion_3_oracle_equivalence() {
    criterion(3, "search agrees with brute-force oracle", || {
        let mut rng = StdRng::seed_from_u64(0x1a77);
        let mut lattices = Vec::new();
        while lattices.len() < 200 {
            let structured = lattices.len() >= 150;
            let lat = random_lattice(&mut rng, structured);
            if oracle_cost(lat.gram(), 5) > 300_000 {
                continue;
            }
            lattices.push(lat);
        }

        let mut found_cases = 0usize;
        let mut exhausted_cases = 0usize;
        for lat in &lattices {
            for m in 0..=5usize {
                let oracle_pairing = oracle_solutions(lat.gram(), m, false);
                let oracle_embedding: BTreeSet<Vec<Vec<i64>>> = oracle_pairing
                    .iter()
                    .filter(|rows| oracle_rank(rows) == lat.rank())
                    .cloned()
                    .collect();

                for notion in [
                    RepresentationNotion::Embedding,
                    RepresentationNotion::PairingPreserving,
                ] {
                    let oracle = if notion == RepresentationNotion::Embedding {
                        &oracle_embedding
                    } else {
                        &oracle_pairing
                    };

                    // pruned decision search agrees on existence
                    let decision = find_representations(
                        lat,
                        DiagonalTarget::new(m),
                        &SearchOptions {
                            notion,
                            ..SearchOptions::default()
                        },
                    );
                    assert_eq!(
                        decision.found(),
                        !oracle.is_empty(),
                        "existence mismatch for {:?} at m={m} ({notion:?})",
                        lat.gram()
                    );

                    // full enumeration with canonicalization off agrees on the set
                    let full = solution_set(
                        lat,
                        m,
                        &SearchOptions {
                            max_solutions: MaxSolutions::Unlimited,
                            canonicalize: false,
                            notion,
                            ..SearchOptions::default()
                        },
                    );
                    assert_eq!(
                        &full,
                        oracle,
                        "solution set mismatch for {:?} at m={m} ({notion:?})",
                        lat.gram()
                    );
                }

                if m == 5 {
                    if oracle_embedding.is_empty() {
                        exhausted_cases += 1;
                    } else {
                        found_cases += 1;
                    }
                }
            }
        }
        assert!(found_cases >= 10, "only {found_cases} found cases sampled");
        assert!(
            exhausted_cases >= 10,
            "only {exhausted_cases} exhausted cases sampled"
        );
    });
}

/// Support bound soundness on the criterion-3 population: Exhausted at the
/// bound stays Exhausted two sizes up, and Found solutions pad by zero to a
/// verified representation one size up.
#[test]
fn criterion_4_support_bound_soundness() {
    criterion(4, "support bound is sound and monotone", || {
        let mut rng = StdRng::seed_from_u64(0x1a77);
        let mut lattices = Vec::new();
        while lattices.len() < 200 {
            let structured = lattices.len() >= 150;
            let lat = random_lattice(&mut rng, structured);
            if oracle_cost(lat.gram(), 5) > 300_000 {
                continue;
            }
            lattices.push(lat);
        }

        for lat in &lattices {
            let m_star = support_bound(lat);
            let at_bound = represents_into_some_diagonal(lat);
            assert_eq!(at_bound.m, m_star);
            if at_bound.found() {
                let rep = &at_bound.representations()[0];
                let padded = rep.zero_padded(1);
                assert_eq!(padded.target_m(), m_star + 1);
                assert!(lat.verify_representation(&padded).unwrap());
            } else {
                for extra in 1..=2usize {
                    let bigger = find_representations(
                        lat,
                        DiagonalTarget::new(m_star + extra),
                        &SearchOptions::decision(),
                    );
                    assert!(
                        !bigger.found(),
                        "exhausted at m*={m_star} but found at m*+{extra} for {:?}",
                        lat.gram()
                    );
                }
            }
        }
    });
}

/// Spin-c identity sweep over 1 <= g <= 20, 2g <= n <= 60, both contact
/// structures, all at exact residue equality.
#[test]
fn criterion_5_spinc_identity_sweep() {
    criterion(5, "spin-c identities over the full sweep", || {
        for g in 1..=20i64 {
            for n in (2 * g)..=60 {
                let b = CircleBundle::new(g, n).unwrap();
                for i in [ContactStructure::Xi0, ContactStructure::Xi1] {
                    let t = contact_spinc(&b, i).unwrap();
                    assert_eq!(
                        c1_circle(&t).coefficient(),
                        euler_class_xi(&b, i).unwrap().coefficient(),
                        "c1 vs euler at g={g} n={n} i={i}"
                    );
                    if n % 2 == 0 {
                        assert!(
                            spincform_check(&b, i).unwrap(),
                            "spin-form identity failed at g={g} n={n} i={i}"
                        );
                    }
                }

                let same = contact_spinc(&b, ContactStructure::Xi0).unwrap().e()
                    == contact_spinc(&b, ContactStructure::Xi1).unwrap().e();
                assert_eq!(same, n == 2 * g, "coincidence criterion at g={g} n={n}");

                let spins: BTreeSet<i64> = spin_structures_circle(&b)
                    .unwrap()
                    .iter()
                    .map(|t| t.e())
                    .collect();
                let zeros: BTreeSet<i64> = (0..n)
                    .filter(|&e| {
                        let t = TorsionSpinc::new(b, e).unwrap();
                        c1_circle(&t).is_zero()
                    })
                    .collect();
                assert_eq!(spins, zeros, "spin set vs c1 zeros at g={g} n={n}");
            }
        }
    });
}

/// Constructor oracle: the direct Gram construction equals the class-based
/// one for d <= 6, and the definiteness classes come out as indefinite,
/// degenerate with kernel (1,2,1,2), and negative definite.
#[test]
fn criterion_6_constructor_oracle() {
    criterion(6, "lattice constructors against the class oracle", || {
        for d in 1..=6usize {
            let direct = ld_lattice(d);
            let gens = ygn::topology::ld_generator_classes(d, 2 * d);
            let from_classes = sublattice_from_classes(2 * d, &gens).unwrap();
            assert_eq!(direct.gram(), from_classes.gram(), "gram mismatch at d={d}");
        }
        assert!(ld_lattice(1).classify_definiteness().is_other());
        match ld_lattice(2).classify_definiteness() {
            ygn::lattice::DefinitenessClass::NegativeSemidefiniteDegenerate { kernel } => {
                let expected: Vec<BigInt> = [1, 2, 1, 2].iter().map(|&x| BigInt::from(x)).collect();
                assert_eq!(kernel, expected);
            }
            other => panic!("expected degenerate at d=2, got {other:?}"),
        }
        for d in 3..=6usize {
            assert!(
                ld_lattice(d).classify_definiteness().is_negative_definite(),
                "d={d} should be negative definite"
            );
        }
    });
}

/// Theorem-range pipeline: the enumeration matches an independent loop,
/// 12 pairs exist at d_max = 1, and `range --dmax 3 --run` certifies every
/// pair with the three-entry assumptions ledger. Budget: under 10 minutes.
#[test]
fn criterion_7_theorem_range_pipeline() {
    criterion(7, "full pipeline over the covered range", || {
        let start = Instant::now();

        // independent enumeration of the covered range
        let d_max = 3i64;
        let mut expected = Vec::new();
        for g in 1..=60i64 {
            for n in (2 * g)..=120 {
                let smallest = (1..=10).find(|&d| d * (d + 1) <= 2 * g && n <= (d + 1) * (d + 1) + 3);
                if let Some(d) = smallest {
                    if d <= d_max {
                        expected.push((g, n, d));
                    }
                }
            }
        }
        let got: Vec<(i64, i64, i64)> = theorem_range(d_max)
            .iter()
            .map(|t| (t.g, t.n, t.d))
            .collect();
        assert_eq!(got, expected, "range enumeration differs from direct loop");

        let at_one: Vec<_> = theorem_range(1);
        assert_eq!(at_one.len(), 12);

        // every report is obstructed and carries the fixed ledger
        for t in theorem_range(d_max) {
            let report = obstruct(t.g, t.n).unwrap();
            assert_eq!(
                report.verdict,
                Verdict::Obstructed,
                "pair (g={}, n={}) not obstructed",
                t.g,
                t.n
            );
            let ids: Vec<&str> = report.assumptions.iter().map(|a| a.id.as_str()).collect();
            assert_eq!(ids, vec!["A1", "A2", "A3"]);
        }

        // and the CLI route agrees
        let output = std::process::Command::new(env!("CARGO_BIN_EXE_ygn"))
            .args(["range", "--dmax", "3", "--run"])
            .output()
            .expect("binary runs");
        assert_eq!(output.status.code(), Some(0));
        let text = String::from_utf8_lossy(&output.stdout);
        assert!(text.contains("all obstructed: yes"));

        let elapsed = start.elapsed();
        assert!(
            elapsed.as_secs() < 600,
            "pipeline took {elapsed:?}, budget is 10 minutes"
        );
    });
}

/// Orthogonality report: chain generators pair 0 and the h-type generator
/// pairs 2 with the proper transform class, and the pipeline report carries
/// the documented open-question note.
#[test]
fn criterion_8_orthogonality_report() {
    criterion(8, "orthogonality pairings and open-question flag", || {
        for d in [2usize, 3] {
            let report = orthogonality_report(d, 2 * d);
            assert_eq!(report.len(), 2 * d);
            for (label, value) in &report[..report.len() - 1] {
                assert_eq!(*value, 0, "chain generator {label} should pair 0 at d={d}");
            }
            let (label, value) = &report[report.len() - 1];
            assert_eq!(*value, 2, "h generator {label} should pair 2 at d={d}");
        }

        // the pipeline flags the open question on covered pairs for d = 2, 3
        for (g, n) in [(3i64, 12i64), (6, 13)] {
            let report = obstruct(g, n).unwrap();
            let orth = report.orthogonality.expect("covered pair has orthogonality data");
            assert_eq!(orth.note, ORTHOGONALITY_NOTE);
            assert!(orth.note.contains("open question"));
            assert_eq!(orth.pairings.last().unwrap().1, 2);
        }
    });
}
