//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any criterion fails.

use std::process::ExitCode;
use std::sync::Arc;

use incidence::exactfield::{ExactMatrix, FieldSpec};
use incidence::ext::{euler_mobius_check, ext1_deformation_complex, ext_dims, mitchell_check};
use incidence::oracle::run_oracle_check;
use incidence::pmodule::PModule;
use incidence::poset::Poset;
use incidence::resolution::{global_dimension, minimal_resolution, projective_dimension};
use incidence::Result;

type Outcome = std::result::Result<(), String>;

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Outcome {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, expected {want:?}"))
    }
}

/// Returns early from a `Result<Outcome>` body when an inner check fails.
macro_rules! check {
    ($e:expr) => {
        if let Err(e) = $e {
            return Ok(Err(e));
        }
    };
}

fn run(body: impl FnOnce() -> Result<Outcome>) -> Outcome {
    body().unwrap_or_else(|e| Err(format!("error: {e}")))
}

fn square() -> Arc<Poset> {
    Arc::new(Poset::grid(1))
}

fn v(p: &Poset, i: usize, j: usize) -> usize {
    p.grid_vertex(i, j).unwrap()
}

fn simple(p: &Arc<Poset>, f: FieldSpec, i: usize, j: usize) -> PModule {
    PModule::simple(p, f, v(p, i, j)).unwrap()
}

fn both_routes(m: &PModule, want: usize) -> Result<Outcome> {
    let res = ext_dims(m, m, 1)?[1];
    let def = ext1_deformation_complex(m, m)?;
    Ok(expect("Ext^1 (resolution, deformation)", (res, def), (want, want)))
}

fn c1(f: FieldSpec) -> Outcome {
    run(|| both_routes(&PModule::interval_full(&square(), f), 0))
}

fn c2(f: FieldSpec) -> Outcome {
    run(|| both_routes(&PModule::trivial_ones(&square(), f), 4))
}

fn c3(f: FieldSpec) -> Outcome {
    run(|| {
        let sq = square();
        let (a, b) = (simple(&sq, f, 0, 0), simple(&sq, f, 1, 0));
        let m = a.direct_sum(&b)?;
        let e1 = |x: &PModule, y: &PModule| ext_dims(x, y, 1).map(|d| d[1]);
        let got = (e1(&m, &m)?, [e1(&a, &b)?, e1(&a, &a)?, e1(&b, &b)?, e1(&b, &a)?]);
        Ok(expect("Ext^1(M,M), [00->10, 00->00, 10->10, 10->00]", got, (1, [1, 0, 0, 0])))
    })
}

fn c4(f: FieldSpec) -> Outcome {
    run(|| {
        let sq = square();
        let m = PModule::hook(&sq, f)?;
        let steps = minimal_resolution(&m, None)?.steps().to_vec();
        let got = (projective_dimension(&m)?, ext_dims(&m, &m, 2)?, steps);
        Ok(expect(
            "pd, Ext, steps",
            got,
            (1, vec![1, 0, 0], vec![vec![v(&sq, 0, 0)], vec![v(&sq, 0, 1)]]),
        ))
    })
}

/// Steps `[P_(j,j); P_(j+1,j) ⊕ P_(j,j+1); P_(j+1,j+1)]` with `δ = (1, -1)`.
fn diagonal_simple_resolution(g: &Arc<Poset>, f: FieldSpec, j: usize) -> Result<Outcome> {
    let res = minimal_resolution(&simple(g, f, j, j), None)?;
    let want = vec![
        vec![v(g, j, j)],
        vec![v(g, j + 1, j), v(g, j, j + 1)],
        vec![v(g, j + 1, j + 1)],
    ];
    if res.steps() != want.as_slice() {
        return Ok(expect("steps", res.steps().to_vec(), want));
    }
    Ok(expect(
        "delta",
        res.differential(2).clone(),
        ExactMatrix::from_i64(f, 2, 1, &[1, -1]),
    ))
}

fn c5(f: FieldSpec) -> Outcome {
    run(|| {
        let sq = square();
        check!(diagonal_simple_resolution(&sq, f, 0)?);
        Ok(expect("gl.dim", global_dimension(&sq, f)?, 2))
    })
}

fn c6(f: FieldSpec) -> Outcome {
    run(|| {
        let sq = square();
        let (a, b) = (simple(&sq, f, 0, 0), simple(&sq, f, 1, 1));
        let m = a.direct_sum(&b)?;
        let e2 = |x: &PModule, y: &PModule| ext_dims(x, y, 2).map(|d| d[2]);
        let sink = (projective_dimension(&b)?, e2(&b, &a)?, e2(&b, &b)?);
        let got = (e2(&m, &m)?, sink, e2(&a, &a)?, e2(&a, &b)?);
        Ok(expect("Ext^2(M,M), (i) (pd, 11->00, 11->11), (ii), (iii)", got, (1, (0, 0, 0), 0, 1)))
    })
}

fn c7(f: FieldSpec) -> Outcome {
    run(|| {
        for n in 1..=3 {
            let g = Arc::new(Poset::grid(n));
            let m = PModule::diagonal(&g, f)?;
            check!(expect(&format!("Ext^2 on grid({n})"), ext_dims(&m, &m, 2)?[2], n));
            for j in 0..n {
                check!(diagonal_simple_resolution(&g, f, j)?.map_err(|e| format!("grid({n}), j={j}: {e}")));
            }
        }
        Ok(Ok(()))
    })
}

fn c8(f: FieldSpec) -> Outcome {
    run(|| {
        for n in 1..=2 {
            let c = mitchell_check(&Arc::new(Poset::grid(n)), f, 2)?;
            check!(expect(&format!("grid({n}) (ext, nerve)"), (c.ext, c.nerve), (vec![1, 0, 0], vec![1, 0, 0])));
        }
        Ok(Ok(()))
    })
}

fn c9() -> Outcome {
    run(|| {
        let f = FieldSpec::default();
        for (n, cases) in [(1, 100), (2, 30)] {
            let report = run_oracle_check(&Arc::new(Poset::grid(n)), f, 20_251_016 + n as u64, cases)?;
            for p in &report.properties {
                if !p.passed() {
                    return Ok(Err(format!("grid({n}) {}: failing cases {:?}", p.property, p.failures)));
                }
            }
        }
        Ok(Ok(()))
    })
}

fn c10() -> Outcome {
    run(|| {
        for n in 1..=2 {
            for e in euler_mobius_check(&Arc::new(Poset::grid(n)), FieldSpec::default())? {
                if !e.agree {
                    return Ok(Err(format!("grid({n}) {} -> {}: euler {} vs mobius {}", e.p, e.q, e.euler, e.mobius)));
                }
            }
        }
        Ok(Ok(()))
    })
}

type Criterion = (&'static str, fn(FieldSpec) -> Outcome);

const FIELD_CRITERIA: [Criterion; 8] = [
    ("full interval module is rigid", c1),
    ("trivial module has a four-dimensional tangent space", c2),
    ("adjacent simples have Ext^1 = k", c3),
    ("hook module: pd 1, rigid, resolution [P_(0,0); P_(0,1)]", c4),
    ("square: S_(0,0) resolution and global dimension 2", c5),
    ("S_(0,0) + S_(1,1) has Ext^2 = k", c6),
    ("diagonal module on grid(n) has Ext^2 = k^n", c7),
    ("constant module Ext matches nerve cohomology", c8),
];

fn main() -> ExitCode {
    let fields = [FieldSpec::Prime(32003), FieldSpec::Prime(2), FieldSpec::Rational];
    let mut results: Vec<(String, Outcome)> = Vec::new();
    for (i, (name, check)) in FIELD_CRITERIA.iter().enumerate() {
        results.push((format!("{:>2}. {name}", i + 1), check(FieldSpec::default())));
    }
    results.push((" 9. random-corpus oracle equivalence".into(), c9()));
    results.push(("10. Euler characteristic of Ext equals the Mobius function".into(), c10()));
    let mut field_failures = Vec::new();
    for f in fields {
        for (i, (_, check)) in FIELD_CRITERIA.iter().enumerate() {
            if let Err(e) = check(f) {
                field_failures.push(format!("{f} criterion {}: {e}", i + 1));
            }
        }
    }
    let eleven = if field_failures.is_empty() { Ok(()) } else { Err(field_failures.join("; ")) };
    results.push(("11. criteria 1-8 hold over GF(32003), GF(2) and Q".into(), eleven));

    let mut ok = true;
    for (name, outcome) in &results {
        match outcome {
            Ok(()) => println!("PASS {name}"),
            Err(e) => {
                ok = false;
                println!("FAIL {name}: {e}");
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
