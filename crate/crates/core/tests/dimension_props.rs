mod common;

use benchred::dimension::{flag_redundant_pairs, pairwise_matrix, RedundancyMatrix};
use benchred::{select_models, AxisKind, Metric, ScoreMatrix, SelectionMode};
use common::oracle::oracle_corr;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn matrix(cols: &[Vec<f64>]) -> ScoreMatrix {
    let n = cols[0].len();
    let values = (0..n)
        .flat_map(|r| cols.iter().map(move |c| c[r]))
        .collect();
    ScoreMatrix::new(
        (0..n).map(|i| format!("m{i:02}")).collect(),
        (0..cols.len()).map(|j| format!("d{j}")).collect(),
        values,
        AxisKind::Dimension,
    )
    .unwrap()
}

fn analyse(cols: &[Vec<f64>], metric: Metric, mode: SelectionMode) -> RedundancyMatrix {
    let m = matrix(cols);
    let (sel, _) = select_models(&m, mode).unwrap();
    pairwise_matrix(&m, metric, &sel).unwrap()
}

fn random_cols(seed: u64, n: usize, m: usize) -> Vec<Vec<f64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..m)
        .map(|_| (0..n).map(|_| rng.random::<f64>()).collect())
        .collect()
}

#[test]
fn reversal_and_noise_fixture() {
    let mut cols = random_cols(11, 25, 2);
    cols.push(cols[0].iter().map(|v| 1.0 - v).collect());
    let r = analyse(&cols, Metric::Srcc, SelectionMode::All);

    assert_eq!(r.cell(0, 2).value, -1.0);
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                let o = oracle_corr(Metric::Srcc, &cols[i], &cols[j]).unwrap();
                assert!((r.cell(i, j).value - o).abs() < 1e-12);
            }
        }
    }
    let rho2 = r.per_item[1].unwrap();
    let expected = (oracle_corr(Metric::Srcc, &cols[1], &cols[0]).unwrap()
        + oracle_corr(Metric::Srcc, &cols[1], &cols[2]).unwrap())
        / 2.0;
    assert!((rho2 - expected).abs() < 1e-12);
    assert!(rho2.abs() < 1e-12);
}

#[test]
fn two_dimensions_collapse_to_the_single_pair() {
    let cols = random_cols(12, 15, 2);
    for metric in [Metric::Srcc, Metric::Plcc] {
        let r = analyse(&cols, metric, SelectionMode::All);
        assert_eq!(r.overall, Some(r.cell(0, 1).value));
    }
}

#[test]
fn flagged_pairs_are_exactly_the_cells_over_threshold() {
    let mut cols = random_cols(13, 30, 3);
    cols.push(cols[0].iter().map(|v| v * 0.9).collect());
    cols.push(cols[1].iter().map(|v| v.sqrt()).collect());
    let r = analyse(&cols, Metric::Srcc, SelectionMode::All);
    let flagged = flag_redundant_pairs(&r, 0.95);
    let mut expected = Vec::new();
    for i in 0..r.len() {
        for j in i + 1..r.len() {
            if r.cell(i, j).get().is_some_and(|v| v >= 0.95) {
                expected.push((r.item_ids[i].clone(), r.item_ids[j].clone()));
            }
        }
    }
    let mut got: Vec<(String, String)> =
        flagged.iter().map(|p| (p.a.clone(), p.b.clone())).collect();
    got.sort();
    expected.sort();
    assert_eq!(got, expected);
    assert_eq!(got.len(), 2);
}

fn cols_strategy() -> impl Strategy<Value = Vec<Vec<f64>>> {
    (3usize..20, 2usize..6)
        .prop_flat_map(|(n, m)| prop::collection::vec(prop::collection::vec(0.0f64..1.0, n), m))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn permuting_dimensions_permutes_outputs(cols in cols_strategy(), seed in any::<u64>()) {
        use rand::seq::SliceRandom;
        let mut perm: Vec<usize> = (0..cols.len()).collect();
        perm.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
        let permuted: Vec<Vec<f64>> = perm.iter().map(|&p| cols[p].clone()).collect();
        for metric in Metric::ALL {
            let a = analyse(&cols, metric, SelectionMode::All);
            let b = analyse(&permuted, metric, SelectionMode::All);
            for (i, &pi) in perm.iter().enumerate() {
                prop_assert_eq!(b.per_item[i].is_some(), a.per_item[pi].is_some());
                if let (Some(x), Some(y)) = (b.per_item[i], a.per_item[pi]) {
                    prop_assert!((x - y).abs() < 1e-12);
                }
                for (j, &pj) in perm.iter().enumerate() {
                    prop_assert_eq!(b.cell(i, j).get(), a.cell(pi, pj).get());
                }
            }
            match (a.overall, b.overall) {
                (Some(x), Some(y)) => prop_assert!((x - y).abs() < 1e-12),
                (x, y) => prop_assert_eq!(x, y),
            }
        }
    }

    #[test]
    fn duplicating_a_dimension(cols in cols_strategy(), pick in any::<prop::sample::Index>()) {
        let k = pick.index(cols.len());
        let mut extended = cols.clone();
        extended.push(cols[k].clone());
        let m = cols.len();
        for metric in Metric::ALL {
            let a = analyse(&cols, metric, SelectionMode::All);
            let b = analyse(&extended, metric, SelectionMode::All);
            for i in 0..m {
                for j in 0..m {
                    prop_assert_eq!(b.cell(i, j).get(), a.cell(i, j).get());
                }
            }
            if let (Some(before), Some(after)) = (a.per_item[k], b.per_item[k]) {
                prop_assert!(after >= before - 1e-12);
            }
            if b.cell(k, m).defined {
                prop_assert_eq!(b.cell(k, m).value, 1.0);
            }
        }
    }

    #[test]
    fn srcc_matrix_survives_monotone_transforms(cols in cols_strategy(), k in 0.2f64..3.0) {
        let transformed: Vec<Vec<f64>> = cols
            .iter()
            .enumerate()
            .map(|(j, c)| c.iter().map(|v| if j % 2 == 0 { v.powf(k) } else { v * v * 0.5 }).collect())
            .collect();
        let a = analyse(&cols, Metric::Srcc, SelectionMode::All);
        let b = analyse(&transformed, Metric::Srcc, SelectionMode::All);
        prop_assert_eq!(a.cells, b.cells);
    }

    #[test]
    fn selection_keeps_the_column_set(cols in (6usize..20, 2usize..5)
        .prop_flat_map(|(n, m)| prop::collection::vec(prop::collection::vec(0.0f64..1.0, n), m)), k in 3usize..6) {
        let all = analyse(&cols, Metric::Srcc, SelectionMode::All);
        let top = analyse(&cols, Metric::Srcc, SelectionMode::TopK(k));
        prop_assert_eq!(&all.item_ids, &top.item_ids);
        prop_assert_eq!(top.selection.selected_ids.len(), k);
    }
}
