use std::f64::consts::PI;

use proptest::prelude::*;

use hilbert_gauss::processes::{analytic_kernel, bridge_model, custom_model, eval_basis, kernel, wiener_model, Grid};
use hilbert_gauss::regression::DesignOperator;
use hilbert_gauss::spectral::{inner, span, trace_q_on, BasisKind};
use hilbert_gauss::{HVector, SpectralModel, Subspace};

const DIM: usize = 12;

/// Eigenvalue blocks {1,2,3}, {4,5}, then simple eigenvalues.
fn blocky_model() -> SpectralModel {
    let mut lambdas = vec![3.0, 3.0, 3.0, 2.0, 2.0];
    lambdas.extend((6..=DIM).map(|k| 1.0 / k as f64));
    custom_model(lambdas, 0.0).unwrap()
}

fn vector() -> impl Strategy<Value = HVector> {
    prop::collection::vec(-3.0..3.0f64, DIM).prop_map(HVector::from)
}

fn mode_set() -> impl Strategy<Value = Vec<usize>> {
    prop::collection::btree_set(1..=DIM, 0..DIM).prop_map(|s| s.into_iter().collect())
}

/// Mode set, or a frame spanned by random vectors inside the first block
/// plus some coordinate modes.
fn subspace() -> impl Strategy<Value = Subspace> {
    let model = blocky_model();
    prop_oneof![
        mode_set().prop_map(|m| Subspace::modes(DIM, &m).unwrap()),
        (prop::collection::vec(prop::collection::vec(-1.0..1.0f64, 3), 1..3), prop::collection::btree_set(6..=DIM, 0..3))
            .prop_filter_map("degenerate block vectors", move |(block, extra)| {
                let mut vs: Vec<HVector> = block
                    .into_iter()
                    .map(|b| {
                        let mut c = vec![0.0; DIM];
                        c[..3].copy_from_slice(&b);
                        HVector::from(c)
                    })
                    .collect();
                vs.extend(extra.into_iter().map(|m| HVector::basis(DIM, m).unwrap()));
                span(&model, &vs).ok()
            }),
    ]
}

fn nested() -> impl Strategy<Value = (Vec<usize>, Vec<usize>, Vec<usize>)> {
    prop::collection::vec(0..3u8, DIM).prop_map(|levels| {
        let pick = |l: u8| -> Vec<usize> { (1..=DIM).filter(|&k| levels[k - 1] <= l).collect() };
        (pick(0), pick(1), pick(2))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn projection_idempotent_and_self_adjoint(s in subspace(), y in vector(), z in vector()) {
        let py = s.project(&y).unwrap();
        let ppy = s.project(&py).unwrap();
        prop_assert!((&ppy - &py).norm() <= 1e-12 * (1.0 + y.norm()));
        let lhs = inner(&py, &z).unwrap();
        let rhs = inner(&y, &s.project(&z).unwrap()).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-12 * (1.0 + y.norm() * z.norm()));
    }

    #[test]
    fn complement_projections_sum_to_identity(s in subspace(), y in vector()) {
        let sum = &s.project(&y).unwrap() + &s.complement().project(&y).unwrap();
        prop_assert!((&sum - &y).norm() <= 1e-12 * (1.0 + y.norm()));
    }

    #[test]
    fn pythagoras_for_nested_subspaces((u, v, w) in nested(), y in vector()) {
        let p = |m: &Vec<usize>| Subspace::modes(DIM, m).unwrap().project(&y).unwrap();
        let (pu, pv, pw) = (p(&u), p(&v), p(&w));
        let whole = (&pw - &pu).norm_sq();
        let parts = (&pw - &pv).norm_sq() + (&pv - &pu).norm_sq();
        prop_assert!((whole - parts).abs() <= 1e-12 * (1.0 + whole));
    }

    #[test]
    fn trace_additivity(modes in prop::collection::btree_set(1..=64usize, 0..20), bridge in any::<bool>()) {
        let model = if bridge { bridge_model(64) } else { wiener_model(64) }.unwrap();
        let modes: Vec<usize> = modes.into_iter().collect();
        let s = Subspace::modes(64, &modes).unwrap();
        let total = trace_q_on(&model, &s, false).unwrap() + trace_q_on(&model, &s.complement(), true).unwrap();
        prop_assert!((total - model.total_trace()).abs() <= 1e-12);
    }

    #[test]
    fn frame_trace_additivity(s in subspace()) {
        let model = blocky_model();
        let total = trace_q_on(&model, &s, false).unwrap() + trace_q_on(&model, &s.complement(), false).unwrap();
        prop_assert!((total - model.total_trace()).abs() <= 1e-12);
    }

    #[test]
    fn lse_is_optimal(
        cols in prop::collection::vec(prop::collection::vec(-2.0..2.0f64, DIM), 1..4),
        y in vector(),
        perturbations in prop::collection::vec(prop::collection::vec(-1.0..1.0f64, 3), 100),
    ) {
        let white = custom_model(vec![1.0; DIM], 0.0).unwrap();
        let Ok(a) = DesignOperator::new(&white, cols.into_iter().map(HVector::from).collect()) else {
            return Ok(());
        };
        let beta = a.lse(&y).unwrap();
        let best = (&y - &a.apply(&beta).unwrap()).norm();
        for d in &perturbations {
            let moved: Vec<f64> = beta.iter().zip(d).map(|(b, e)| b + e).collect();
            prop_assert!((&y - &a.apply(&moved).unwrap()).norm() >= best - 1e-12);
        }
        // A betâ = Π_U y, and the residual is orthogonal to every column
        let fitted = a.apply(&beta).unwrap();
        let projected = a.range_subspace().project(&y).unwrap();
        prop_assert!((&fitted - &projected).norm() <= 1e-10 * (1.0 + y.norm()));
        for col in a.columns() {
            prop_assert!(inner(col, &(&y - &fitted)).unwrap().abs() <= 1e-10 * (1.0 + y.norm()));
        }
    }

    #[test]
    fn functional_consistency(c in prop::collection::vec(-2.0..2.0f64, 2), y in vector()) {
        let white = custom_model(vec![1.0; DIM], 0.0).unwrap();
        let mut x = vec![0.0; DIM];
        x.iter_mut().enumerate().for_each(|(i, v)| *v = (i as f64).sqrt());
        let a = DesignOperator::new(&white, vec![HVector::from(vec![1.0; DIM]), HVector::from(x)]).unwrap();
        let beta = a.lse(&y).unwrap();
        let b = a.pullback_functional(&c).unwrap();
        let lhs = c[0] * beta[0] + c[1] * beta[1];
        let rhs = inner(&b, &a.range_subspace().project(&y).unwrap()).unwrap();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * (1.0 + lhs.abs()));
    }
}

#[test]
fn basis_orthonormal_by_quadrature() {
    let grid = Grid::uniform(10_001).unwrap();
    for model in [wiener_model(20).unwrap(), bridge_model(20).unwrap()] {
        let values: Vec<Vec<f64>> = (1..=20)
            .map(|k| grid.points().iter().map(|&t| eval_basis(&model, k, t).unwrap()).collect())
            .collect();
        for j in 0..20 {
            for k in 0..20 {
                let product: Vec<f64> = values[j].iter().zip(&values[k]).map(|(a, b)| a * b).collect();
                let integral = grid.trapezoid(&product).unwrap();
                let target = if j == k { 1.0 } else { 0.0 };
                assert!((integral - target).abs() < 1e-6, "{:?} <e_{}, e_{}> = {integral}", model.basis(), j + 1, k + 1);
            }
        }
    }
}

#[test]
fn mercer_sums_converge_monotonically() {
    let grid = Grid::uniform(101).unwrap();
    for (basis, build) in [(BasisKind::Wiener, wiener_model as fn(usize) -> _), (BasisKind::Bridge, bridge_model)] {
        let errors: Vec<f64> = [10, 100, 1000]
            .into_iter()
            .map(|n| {
                let model = build(n).unwrap();
                let mut worst: f64 = 0.0;
                for &s in grid.points() {
                    for &t in grid.points() {
                        let exact = analytic_kernel(basis, s, t).unwrap();
                        worst = worst.max((kernel(&model, s, t).unwrap() - exact).abs());
                    }
                }
                worst
            })
            .collect();
        assert!(errors[0] > errors[1] && errors[1] > errors[2], "{basis:?}: {errors:?}");
        assert!(errors[2] < 1e-3 && errors[2] > 0.0);
    }
}

#[test]
fn kernel_diagonal_is_trace_density() {
    // ∫ k(t, t) dt = tr Q
    let grid = Grid::uniform(2001).unwrap();
    let model = wiener_model(2000).unwrap();
    let diag: Vec<f64> = grid.points().iter().map(|&t| analytic_kernel(BasisKind::Wiener, t, t).unwrap()).collect();
    assert!((grid.trapezoid(&diag).unwrap() - model.total_trace()).abs() < 1e-12);
    assert!((model.eigenvalue(1).unwrap() - 4.0 / (PI * PI)).abs() < 1e-16);
}
