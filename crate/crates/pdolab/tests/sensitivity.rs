//! Cube-family sensitivity: the trend experiments take suprema over a dyadic
//! scale ladder. This check reruns a ratio ladder with a 3x denser family and
//! confirms the stability verdict does not depend on that choice.

use pdolab::grid::{make_grid, make_test_function, TestFunction};
use pdolab::harness::report::trend_stats;
use pdolab::maximal::{hl_maximal, sharp_function, BoundaryPolicy, CubeFamily};
use pdolab::operator::OperatorHandle;
use pdolab::partition::LPPartition;
use pdolab::symbol::SymbolSpec;

fn max_ratio(op: &OperatorHandle, family: &CubeFamily, u: &pdolab::grid::SampledField) -> f64 {
    let tu = op.apply(u).unwrap();
    let sharp = sharp_function(&tu, family).unwrap();
    let m2 = hl_maximal(u, family, 2.0).unwrap();
    let floor = pdolab::tolerances::EPS_FLOOR_REL * u.norm_sup();
    let mut best = 0.0f64;
    for i in 0..u.grid.len() {
        if m2.values[i] > floor {
            best = best.max(sharp.values[i] / m2.values[i]);
        }
    }
    best
}

#[test]
fn denser_scale_ladder_preserves_the_stability_verdict() {
    let symbol = SymbolSpec::miyachi(-0.25, 0.5, 1.0).unwrap();
    let mut per_family = Vec::new();
    for dense in [false, true] {
        let mut series = Vec::new();
        for n in [64usize, 128, 256] {
            let grid = make_grid(1, n, 0.5).unwrap();
            let partition = LPPartition::new(2.0).unwrap();
            let op = OperatorHandle::auto(symbol.clone(), grid, partition);
            let family = if dense {
                CubeFamily::dense(&grid, BoundaryPolicy::Clip, 3)
            } else {
                CubeFamily::dyadic(&grid, BoundaryPolicy::Clip)
            };
            let mut worst = 0.0f64;
            for (center, width) in [(0.0, 0.06), (0.1, 0.04)] {
                let u = make_test_function(
                    &TestFunction::Gaussian {
                        center: [center, 0.0],
                        width,
                    },
                    &grid,
                )
                .unwrap();
                worst = worst.max(max_ratio(&op, &family, &u));
            }
            series.push(worst);
        }
        let (drift, _, verdict) = trend_stats(&series);
        println!("family dense={dense}: series {series:?}, drift {drift:.4}, verdict {verdict}");
        per_family.push(verdict);
    }
    assert_eq!(
        per_family[0], per_family[1],
        "dyadic vs dense families disagree on the stability verdict"
    );
}
