//! Acceptance criteria. Prints one line per criterion and exits nonzero if
//! any of them fails or exceeds its time budget.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use wellconn::{
    apply_boundary, boundary_matrix, build_t0, cube_family, face_unindex, find_dependency,
    find_odd_connected_subset, find_well_connected_subset, is_well_connected, ker_dim_formula,
    kernel_basis, prune_to_core, rank, rank_top_boundary, tight_bound, top_boundary_columns,
    verify_cube_relation, verify_odd_connected, Arities, BitMatrix, Chain, ExtremalConfig,
    LevelIndex, Method, StringSet,
};

type Check = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Every tuple of length `1..=max_n` over `values`.
fn grid(max_n: usize, values: &[usize]) -> Vec<Arities> {
    let mut out = Vec::new();
    let mut layer: Vec<Vec<usize>> = vec![vec![]];
    for _ in 0..max_n {
        layer = layer
            .iter()
            .flat_map(|p| {
                values.iter().map(move |&v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
        out.extend(layer.iter().map(|d| Arities::new(d.clone()).unwrap()));
    }
    out
}

fn big_grid() -> Vec<Arities> {
    grid(4, &[2, 3, 4])
}

fn small_grid() -> Vec<Arities> {
    grid(3, &[2, 3])
}

/// Every anchor tuple for `a`.
fn all_configs(a: &Arities) -> Vec<ExtremalConfig> {
    a.strings()
        .map(|y| ExtremalConfig::new(a.clone(), y.coords().to_vec()).unwrap())
        .collect()
}

fn top_columns_matrix(set: &StringSet) -> BitMatrix {
    let a = set.arities();
    let rows = LevelIndex::new(a, a.n() - 1).unwrap().len();
    BitMatrix::from_columns(rows, &top_boundary_columns(set)).unwrap()
}

fn criterion_1() -> Check {
    let grid = big_grid();
    ensure(grid.len() == 120, || format!("grid has {} tuples", grid.len()))?;
    for a in &grid {
        let r = rank_top_boundary(a);
        let b = tight_bound(a);
        ensure(r == b, || format!("d={:?}: rank {r} != bound {b}", a.dims()))?;
    }
    Ok(())
}

fn criterion_2() -> Check {
    for a in &big_grid() {
        let mats: Vec<BitMatrix> = (1..=a.n())
            .map(|k| boundary_matrix(a, k).unwrap().into_matrix())
            .collect();
        for k in 1..=a.n() {
            let m = &mats[k - 1];
            if k >= 2 {
                let prod = mats[k - 2].mul(m).unwrap();
                ensure(prod.is_zero(), || format!("d={:?}: ∂{}∂{} != 0", a.dims(), k - 1, k))?;
            }
            let r = rank(m);
            let below = ker_dim_formula(a, k - 1).unwrap();
            ensure(r == below, || {
                format!("d={:?} k={k}: rank {r} != ker formula {below}", a.dims())
            })?;
            let nullity = kernel_basis(m).len();
            let here = ker_dim_formula(a, k).unwrap();
            ensure(nullity == here, || {
                format!("d={:?} k={k}: nullity {nullity} != ker formula {here}", a.dims())
            })?;
        }
    }
    Ok(())
}

fn criterion_3() -> Check {
    for a in &small_grid() {
        for cfg in all_configs(a) {
            let t0 = build_t0(&cfg);
            let tag = || format!("d={:?} y={:?}", a.dims(), cfg.anchors());
            ensure(t0.len() == tight_bound(a), || format!("{}: |T0| = {}", tag(), t0.len()))?;
            ensure(prune_to_core(&t0).is_empty(), || format!("{}: nonempty core", tag()))?;
            let r = rank(&top_columns_matrix(&t0));
            ensure(r == t0.len(), || format!("{}: column rank {r}", tag()))?;
        }
    }
    Ok(())
}

fn criterion_4() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7e57);
    for a in &small_grid() {
        let size = tight_bound(a) + 1;
        for trial in 0..200 {
            let mut t = StringSet::new(a.clone());
            for i in sample(&mut rng, a.universe_size(), size) {
                t.insert(a.string_unindex(i).unwrap()).unwrap();
            }
            let tag = || format!("d={:?} trial {trial}", a.dims());
            let w = find_odd_connected_subset(a, &t)
                .map_err(|e| format!("{}: {e}", tag()))?
                .ok_or_else(|| format!("{}: no witness", tag()))?;
            ensure(!w.is_empty(), || format!("{}: empty witness", tag()))?;
            ensure(verify_odd_connected(&w), || format!("{}: not odd-connected", tag()))?;
            ensure(is_well_connected(&w), || format!("{}: not well-connected", tag()))?;
            let boundary = apply_boundary(a, &Chain::indicator(&w)).unwrap();
            ensure(boundary.is_zero(), || format!("{}: boundary nonzero", tag()))?;
        }
    }
    Ok(())
}

fn criterion_5() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc0be);
    for a in &small_grid() {
        for cfg in all_configs(a) {
            let t0 = build_t0(&cfg);
            for _ in 0..100 {
                let coords: Vec<usize> = (0..a.n())
                    .map(|i| {
                        // uniform over the d_i − 1 non-anchor values
                        let v = rng.random_range(0..a.dim(i) - 1);
                        if v >= cfg.anchors()[i] {
                            v + 1
                        } else {
                            v
                        }
                    })
                    .collect();
                let c = a.string(coords).unwrap();
                let tag = || format!("d={:?} y={:?} c={c}", a.dims(), cfg.anchors());
                ensure(verify_cube_relation(&cfg, &c).unwrap(), || {
                    format!("{}: cube boundary nonzero", tag())
                })?;
                let mut t = t0.clone();
                t.insert(c.clone()).unwrap();
                let members: Vec<_> = t.iter().cloned().collect();
                let support = find_dependency(&top_boundary_columns(&t))
                    .unwrap()
                    .ok_or_else(|| format!("{}: no dependency", tag()))?;
                let mut found = StringSet::new(a.clone());
                for j in support {
                    found.insert(members[j].clone()).unwrap();
                }
                let cube = cube_family(&cfg, &c).unwrap();
                ensure(found == cube, || format!("{}: support is not the cube family", tag()))?;
            }
        }
    }
    Ok(())
}

/// Well-connectedness of every subset of the universe, on bitmasks.
fn well_connected_table(a: &Arities) -> Vec<bool> {
    let size = a.universe_size();
    let strings: Vec<Vec<usize>> = a.strings().map(|s| s.coords().to_vec()).collect();
    // nb[x][i]: mask of strings differing from x exactly on axis i
    let nb: Vec<Vec<u32>> = strings
        .iter()
        .map(|x| {
            (0..a.n())
                .map(|i| {
                    strings
                        .iter()
                        .enumerate()
                        .filter(|(_, y)| (0..a.n()).all(|j| (x[j] == y[j]) == (j != i)))
                        .fold(0u32, |m, (k, _)| m | 1 << k)
                })
                .collect()
        })
        .collect();
    (0..1u32 << size)
        .map(|m| {
            m != 0
                && (0..size)
                    .filter(|&x| m >> x & 1 == 1)
                    .all(|x| nb[x].iter().all(|&mask| mask & m != 0))
        })
        .collect()
}

fn criterion_6() -> Check {
    for d in [vec![2, 2], vec![2, 3], vec![3, 3], vec![2, 2, 2], vec![2, 2, 3]] {
        let a = Arities::new(d).unwrap();
        let size = a.universe_size();
        let wc = well_connected_table(&a);
        let to_set = |m: u32| {
            let mut s = StringSet::new(a.clone());
            for i in (0..size).filter(|&i| m >> i & 1 == 1) {
                s.insert(a.string_unindex(i).unwrap()).unwrap();
            }
            s
        };
        for t in 1..1u32 << size {
            // union of all well-connected subsets of t
            let mut maximal = 0u32;
            let mut sub = t;
            while sub != 0 {
                if wc[sub as usize] {
                    maximal |= sub;
                }
                sub = (sub - 1) & t;
            }
            let ts = to_set(t);
            let tag = || format!("d={:?} t={t:#b}", a.dims());
            ensure(wc[maximal as usize] || maximal == 0, || {
                format!("{}: oracle union not well-connected", tag())
            })?;
            ensure(prune_to_core(&ts) == to_set(maximal), || {
                format!("{}: core differs from oracle", tag())
            })?;
            let report = find_well_connected_subset(&a, &ts).unwrap();
            ensure((report.method == Method::None) == (maximal == 0), || {
                format!("{}: method {} but oracle core size {}", tag(), report.method, maximal.count_ones())
            })?;
        }
    }
    Ok(())
}

fn criterion_7() -> Check {
    for a in &big_grid() {
        for k in 0..=a.n() {
            let idx = LevelIndex::new(a, k).unwrap();
            for i in 0..idx.len() {
                let f = face_unindex(a, k, i).unwrap();
                let back = wellconn::face_index(a, &f).unwrap();
                ensure(back == i, || format!("d={:?} k={k}: {i} -> {back}", a.dims()))?;
            }
            ensure(face_unindex(a, k, idx.len()).is_err(), || {
                format!("d={:?} k={k}: index past the end accepted", a.dims())
            })?;
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(0x64);
    for trial in 0..1000 {
        let mut m = BitMatrix::zeros(64, 64);
        // vary density so that rank-deficient matrices actually occur
        let p = [0.5, 0.1, 0.03][trial % 3];
        for r in 0..64 {
            for c in 0..64 {
                m.set(r, c, rng.random_bool(p));
            }
        }
        let r = rank(&m);
        let nullity = kernel_basis(&m).len();
        ensure(r + nullity == 64, || format!("trial {trial}: {r} + {nullity} != 64"))?;
    }

    for case in common::GOLDEN_CASES {
        common::check_golden(case)?;
    }
    Ok(())
}

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Duration,
    run: fn() -> Check,
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, name: "rank of top boundary equals tight bound", budget: Duration::from_secs(10), run: criterion_1 },
        Criterion { id: 2, name: "boundary squares to zero and sequence is exact", budget: Duration::from_secs(30), run: criterion_2 },
        Criterion { id: 3, name: "extremal family is tight for every anchor", budget: Duration::from_secs(10), run: criterion_3 },
        Criterion { id: 4, name: "odd-connected witness above the bound", budget: Duration::from_secs(60), run: criterion_4 },
        Criterion { id: 5, name: "cube relation is the unique dependency", budget: Duration::from_secs(10), run: criterion_5 },
        Criterion { id: 6, name: "pruning agrees with exhaustive oracle", budget: Duration::from_secs(60), run: criterion_6 },
        Criterion { id: 7, name: "indexing, rank-nullity, golden outputs", budget: Duration::from_secs(60), run: criterion_7 },
    ];

    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let result = (c.run)();
        let elapsed = start.elapsed();
        let result = result.and_then(|()| {
            ensure(elapsed <= c.budget, || {
                format!("took {:.2}s, budget {}s", elapsed.as_secs_f64(), c.budget.as_secs())
            })
        });
        match result {
            Ok(()) => println!("criterion {}: {}: PASS ({:.2}s)", c.id, c.name, elapsed.as_secs_f64()),
            Err(msg) => {
                failed += 1;
                println!("criterion {}: {}: FAIL ({:.2}s): {msg}", c.id, c.name, elapsed.as_secs_f64());
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
