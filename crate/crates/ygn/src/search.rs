//! Complete backtracking search for Gram representations into negative
//! definite diagonal lattices.
//!
//! The search assigns an image vector to one generator at a time, depth
//! first. At depth `i` the candidates are exactly the integer vectors of
//! norm `-gram[i][i]` that reproduce the required pairings with every
//! previously assigned row. Symmetry reduction canonicalizes candidates
//! under the signed permutations of the target that fix the partial
//! assignment pointwise, which preserves completeness up to target
//! automorphism. A finite support bound reduces the unbounded question
//! "does the lattice embed into D_m for some m" to a single search.
//!
//! Two notions of "representation" are supported. `Embedding` asks for
//! pairing preservation together with linearly independent images, which is
//! equivalent to injectivity of the induced map; this is the default and the
//! notion the obstruction pipeline consumes. `PairingPreserving` drops the
//! independence requirement. The notions agree for nondegenerate sources
//! (a dependency among images would place a nonzero vector in the radical),
//! and differ exactly on degenerate ones: any pairing preserving map into a
//! negative definite target kills the whole radical, so a degenerate source
//! admits no embedding at all while it may well admit pairing preserving
//! assignments.

use std::collections::{BTreeSet, HashMap};
use std::rc::Rc;

use num::{BigRational, Zero};
use serde::{Deserialize, Serialize};

use crate::lattice::{DefinitenessClass, DiagonalTarget, GramLattice, GramRepresentation};

/// Which maps count as solutions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepresentationNotion {
    /// Pairing preserving with linearly independent images (an injective
    /// isometric copy of the source). Default.
    Embedding,
    /// Pairing preserving only; the induced map may have a kernel.
    PairingPreserving,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MaxSolutions {
    /// Stop after this many solutions; values below 1 behave as 1.
    Bounded(u64),
    Unlimited,
}

impl MaxSolutions {
    fn reached(self, found: usize) -> bool {
        match self {
            MaxSolutions::Bounded(b) => found as u64 >= b.max(1),
            MaxSolutions::Unlimited => false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeneratorOrder {
    /// Assign generators in the order they appear in the Gram matrix.
    Given,
    /// Assign generators by decreasing absolute diagonal, ties in given order.
    DescendingAbsoluteNorm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub max_solutions: MaxSolutions,
    pub canonicalize: bool,
    pub generator_order: GeneratorOrder,
    /// Classify the source first and return `Exhausted` outright when no
    /// solution can exist. Disabling this only slows the search down; the
    /// verdict is unchanged because the tree itself is exhaustive.
    pub definiteness_precheck: bool,
    pub notion: RepresentationNotion,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            max_solutions: MaxSolutions::Bounded(1),
            canonicalize: true,
            generator_order: GeneratorOrder::Given,
            definiteness_precheck: true,
            notion: RepresentationNotion::Embedding,
        }
    }
}

impl SearchOptions {
    /// Decision query: stop at the first solution.
    pub fn decision() -> Self {
        SearchOptions::default()
    }

    /// Collect every solution the canonical tree produces.
    pub fn enumerate_all() -> Self {
        SearchOptions {
            max_solutions: MaxSolutions::Unlimited,
            ..SearchOptions::default()
        }
    }
}

/// How many candidates each rule rejected, plus the short-circuit flags.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PruneTally {
    /// 1 when the source was classified `Other` and the search never ran.
    pub definiteness_precheck: u64,
    /// 1 when the source was degenerate and the notion asks for embeddings,
    /// so every assignment would kill the radical and the search never ran.
    pub degenerate_source: u64,
    /// Candidates with more nonzero coordinates than the diagonal allows.
    /// Cannot fire for norm-exact candidates; kept as an explicit guard.
    pub support_budget: u64,
    /// Candidates failing a required pairing against an assigned row.
    pub cross_pairing: u64,
    /// Candidates that are not canonical under the stabilizer of the
    /// partial assignment.
    pub canonical: u64,
    /// Complete assignments rejected for linearly dependent images
    /// (embedding notion only).
    pub dependent_images: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum SearchOutcome {
    Found { representations: Vec<GramRepresentation> },
    Exhausted,
}

/// Result of one search run. `Exhausted` certifies that the full canonical
/// tree was traversed with zero solutions. Identical inputs and options
/// produce identical certificates, including `nodes_visited`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchCertificate {
    pub m: usize,
    #[serde(flatten)]
    pub outcome: SearchOutcome,
    pub nodes_visited: u64,
    pub pruned_by: PruneTally,
}

impl SearchCertificate {
    pub fn found(&self) -> bool {
        matches!(self.outcome, SearchOutcome::Found { .. })
    }

    pub fn representations(&self) -> &[GramRepresentation] {
        match &self.outcome {
            SearchOutcome::Found { representations } => representations,
            SearchOutcome::Exhausted => &[],
        }
    }
}

/// All integer vectors of length `m` whose squared euclidean norm is `s`,
/// each exactly once, in lexicographic order (coordinates scanned left to
/// right, values ascending). Negative `s` yields no vectors.
pub fn enumerate_norm_vectors(s: i64, m: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    if s < 0 {
        return out;
    }
    let mut cur = vec![0i64; m];
    fn rec(idx: usize, remaining: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if idx == cur.len() {
            if remaining == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let lim = isqrt(remaining);
        for c in -lim..=lim {
            cur[idx] = c;
            rec(idx + 1, remaining - c * c, cur, out);
        }
        cur[idx] = 0;
    }
    rec(0, s, &mut cur, &mut out);
    out
}

fn isqrt(s: i64) -> i64 {
    if s <= 0 {
        return 0;
    }
    let mut r = (s as f64).sqrt() as i64;
    while r * r > s {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= s {
        r += 1;
    }
    r
}

/// Sum of the absolute diagonal entries. Any representation row of norm
/// `|gram[i][i]|` has at most that many nonzero coordinates, so every
/// solution into any D_m touches at most this many coordinates in total:
/// `Exhausted` at the support bound certifies non-representability into
/// every diagonal target, and zero padding lifts solutions the other way.
pub fn support_bound(lattice: &GramLattice) -> usize {
    (0..lattice.rank())
        .map(|i| lattice.diagonal_entry(i).unsigned_abs())
        .sum::<u64>() as usize
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Exact rank of the rows over the rationals.
fn row_rank(rows: &[Vec<i64>], m: usize) -> usize {
    let mut a: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigRational::from_integer(x.into())).collect())
        .collect();
    let mut rank = 0usize;
    for col in 0..m {
        let Some(pivot) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        for r in (rank + 1)..a.len() {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &a[rank][col];
            for c in col..m {
                let sub = &f * &a[rank][c];
                a[r][c] = &a[r][c] - &sub;
            }
        }
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    rank
}

struct Searcher<'a> {
    lattice: &'a GramLattice,
    m: usize,
    order: Vec<usize>,
    opts: SearchOptions,
    candidates: Vec<Rc<Vec<Vec<i64>>>>,
    rows: Vec<Vec<i64>>,
    touched: Vec<bool>,
    solutions: Vec<GramRepresentation>,
    nodes_visited: u64,
    pruned: PruneTally,
    stop: bool,
}

impl<'a> Searcher<'a> {
    fn cross_pairing_ok(&self, v: &[i64], depth: usize) -> bool {
        let gi = self.order[depth];
        for (j, row) in self.rows.iter().enumerate() {
            let gj = self.order[j];
            if dot(v, row) != -self.lattice.entry(gi, gj) {
                return false;
            }
        }
        true
    }

    /// Canonical form under the signed permutations of the coordinates not
    /// yet touched by the partial assignment: on those coordinates the
    /// candidate must be nonnegative and non-increasing, which picks one
    /// representative per orbit (sort the untouched values, signs up).
    fn canonical_ok(&self, v: &[i64]) -> bool {
        let mut prev = i64::MAX;
        for k in 0..self.m {
            if self.touched[k] {
                continue;
            }
            let x = v[k];
            if x < 0 || x > prev {
                return false;
            }
            prev = x;
        }
        true
    }

    fn dfs(&mut self, depth: usize) {
        if depth == self.lattice.rank() {
            if self.opts.notion == RepresentationNotion::Embedding
                && row_rank(&self.rows, self.m) < self.rows.len()
            {
                self.pruned.dependent_images += 1;
                return;
            }
            // report rows in source generator order
            let mut images = vec![Vec::new(); self.rows.len()];
            for (d, row) in self.rows.iter().enumerate() {
                images[self.order[d]] = row.clone();
            }
            let rep = GramRepresentation::new(images, self.m)
                .expect("search rows form a consistent representation");
            debug_assert!(self.lattice.verify_representation(&rep).unwrap());
            self.solutions.push(rep);
            if self.opts.max_solutions.reached(self.solutions.len()) {
                self.stop = true;
            }
            return;
        }
        let gi = self.order[depth];
        let budget = self.lattice.diagonal_entry(gi).unsigned_abs() as usize;
        let candidates = Rc::clone(&self.candidates[depth]);
        for v in candidates.iter() {
            if v.iter().filter(|&&x| x != 0).count() > budget {
                self.pruned.support_budget += 1;
                continue;
            }
            if !self.cross_pairing_ok(v, depth) {
                self.pruned.cross_pairing += 1;
                continue;
            }
            if self.opts.canonicalize && !self.canonical_ok(v) {
                self.pruned.canonical += 1;
                continue;
            }
            self.nodes_visited += 1;
            let mut newly_touched = Vec::new();
            for (k, &x) in v.iter().enumerate() {
                if x != 0 && !self.touched[k] {
                    self.touched[k] = true;
                    newly_touched.push(k);
                }
            }
            self.rows.push(v.clone());
            self.dfs(depth + 1);
            self.rows.pop();
            for k in newly_touched {
                self.touched[k] = false;
            }
            if self.stop {
                return;
            }
        }
    }
}

/// Decides whether the lattice has a representation in `D_m` and, depending
/// on the options, enumerates the solutions. The traversal is exhaustive:
/// every pruning rule is completeness preserving (canonicalization up to
/// target automorphism), so `Exhausted` is a certificate of non-existence
/// for the selected notion.
pub fn find_representations(
    lattice: &GramLattice,
    target: DiagonalTarget,
    opts: &SearchOptions,
) -> SearchCertificate {
    let m = target.m();
    let mut pruned = PruneTally::default();
    if opts.definiteness_precheck {
        match lattice.classify_definiteness() {
            DefinitenessClass::Other => {
                // the negated Gram matrix is not positive semidefinite, so it
                // is not a matrix of inner products of any real vectors
                pruned.definiteness_precheck = 1;
                return SearchCertificate {
                    m,
                    outcome: SearchOutcome::Exhausted,
                    nodes_visited: 0,
                    pruned_by: pruned,
                };
            }
            DefinitenessClass::NegativeSemidefiniteDegenerate { .. }
                if opts.notion == RepresentationNotion::Embedding =>
            {
                // every pairing preserving map sends the radical to vectors of
                // square zero, hence to zero in a definite target: the images
                // are always dependent and no embedding exists
                pruned.degenerate_source = 1;
                return SearchCertificate {
                    m,
                    outcome: SearchOutcome::Exhausted,
                    nodes_visited: 0,
                    pruned_by: pruned,
                };
            }
            _ => {}
        }
    }

    let rank = lattice.rank();
    let mut order: Vec<usize> = (0..rank).collect();
    if opts.generator_order == GeneratorOrder::DescendingAbsoluteNorm {
        order.sort_by_key(|&i| std::cmp::Reverse(lattice.diagonal_entry(i).unsigned_abs()));
    }

    let mut by_norm: HashMap<i64, Rc<Vec<Vec<i64>>>> = HashMap::new();
    let candidates: Vec<Rc<Vec<Vec<i64>>>> = order
        .iter()
        .map(|&gi| {
            let s = -lattice.diagonal_entry(gi);
            Rc::clone(
                by_norm
                    .entry(s)
                    .or_insert_with(|| Rc::new(enumerate_norm_vectors(s, m))),
            )
        })
        .collect();

    let mut searcher = Searcher {
        lattice,
        m,
        order,
        opts: *opts,
        candidates,
        rows: Vec::with_capacity(rank),
        touched: vec![false; m],
        solutions: Vec::new(),
        nodes_visited: 0,
        pruned,
        stop: false,
    };
    searcher.dfs(0);

    let outcome = if searcher.solutions.is_empty() {
        SearchOutcome::Exhausted
    } else {
        SearchOutcome::Found {
            representations: searcher.solutions,
        }
    };
    SearchCertificate {
        m,
        outcome,
        nodes_visited: searcher.nodes_visited,
        pruned_by: searcher.pruned,
    }
}

/// Decides representability into `D_m` for every `m` at once by searching at
/// the support bound `m* = sum_i |gram[i][i]|`. Soundness: each image row has
/// at most `|gram[i][i]|` nonzero coordinates, so any solution anywhere
/// restricts to the coordinates it touches, at most `m*` of them; conversely
/// zero padding lifts a solution to every larger target.
pub fn represents_into_some_diagonal(lattice: &GramLattice) -> SearchCertificate {
    represents_into_some_diagonal_with(lattice, &SearchOptions::default())
}

/// [`represents_into_some_diagonal`] with explicit options.
pub fn represents_into_some_diagonal_with(
    lattice: &GramLattice,
    opts: &SearchOptions,
) -> SearchCertificate {
    find_representations(lattice, DiagonalTarget::new(support_bound(lattice)), opts)
}

/// Invariant of a representation under the signed permutation action on the
/// target coordinates: columns are sign-normalized (first nonzero entry made
/// positive) and sorted. Two representations lie in the same orbit exactly
/// when their forms coincide: the group acts by choosing a sign per column
/// and permuting columns, and the sorted multiset of normalized columns is a
/// complete invariant for that action.
pub fn canonical_orbit_form(rep: &GramRepresentation) -> Vec<Vec<i64>> {
    let rows = rep.images();
    let m = rep.target_m();
    let mut cols: Vec<Vec<i64>> = (0..m)
        .map(|k| rows.iter().map(|r| r[k]).collect())
        .collect();
    for col in cols.iter_mut() {
        if let Some(&first) = col.iter().find(|&&x| x != 0) {
            if first < 0 {
                for x in col.iter_mut() {
                    *x = -*x;
                }
            }
        }
    }
    cols.sort();
    cols.reverse();
    cols
}

/// Number of representations up to the signed permutation action on the
/// target coordinates. The canonical search already reaches at least one
/// representative of every orbit; the representatives are then merged by
/// their exact orbit invariant.
pub fn orbit_count(lattice: &GramLattice, target: DiagonalTarget) -> u64 {
    let opts = SearchOptions::enumerate_all();
    let cert = find_representations(lattice, target, &opts);
    let forms: BTreeSet<Vec<Vec<i64>>> = cert
        .representations()
        .iter()
        .map(canonical_orbit_form)
        .collect();
    forms.len() as u64
}
