use hodge_core::higgs::{
    check_commutation, image_rank, mirror_lemma_check, pointwise_rank, random_commuting_higgs,
    rank_one_lemma_check, splitting_detector, HiggsField, SamplingStrategy,
};
use hodge_core::{sampling, HodgeNumbers, Matrix};

fn hn(r: &[usize]) -> HodgeNumbers {
    HodgeNumbers::new(r.to_vec()).unwrap()
}

/// Fields with every entry in `{−1, 0, 1}` for ranks `(2, 1, 2)` and two
/// tangent directions, in base-3 order.
fn grid() -> impl Iterator<Item = HiggsField> {
    (0..3usize.pow(8)).map(|code| {
        let d: Vec<i64> = (0..8).map(|j| (code / 3usize.pow(j)) as i64 % 3 - 1).collect();
        let t0 = (0..2).map(|a| Matrix::from_int_rows(&[&[d[2 * a], d[2 * a + 1]]])).collect();
        let t1 = (0..2).map(|a| Matrix::from_int_rows(&[&[d[4 + 2 * a]], &[d[5 + 2 * a]]])).collect();
        HiggsField::new(hn(&[2, 1, 2]), 2, vec![t0, t1]).unwrap()
    })
}

#[test]
fn exhaustive_grid_satisfies_both_statements() {
    let (mut commuting, mut direct, mut mirror) = (0, 0, 0);
    for h in grid().filter(|h| check_commutation(h).holds) {
        commuting += 1;
        assert!(rank_one_lemma_check(&h, 1).unwrap().holds());
        assert!(mirror_lemma_check(&h, 1).unwrap().holds());
        if pointwise_rank(&h, 0).unwrap() >= 2 {
            direct += 1;
            assert!(h.vanishes(1));
        }
        if image_rank(&h, 1).unwrap() >= 2 {
            mirror += 1;
            assert!(h.vanishes(0));
        }
    }
    assert!(commuting > 0 && direct > 0 && mirror > 0);
}

fn sampled_fields() -> impl Iterator<Item = (usize, HiggsField)> {
    let shapes: Vec<Vec<usize>> = vec![
        vec![2, 1, 2],
        vec![3, 1, 2],
        vec![2, 1, 4],
        vec![4, 1, 3],
        vec![1, 2, 1, 2],
        vec![2, 1, 2, 1, 2],
    ];
    (0..1000u64).map(move |j| {
        let ranks = hn(&shapes[j as usize % shapes.len()]);
        let i = (1..ranks.k()).find(|&i| ranks.rank(i) == 1).unwrap();
        let m_t = 2 + (j % 2) as usize;
        let strategy = match j % 4 {
            0 => SamplingStrategy::Pullback,
            1 => {
                let mut profile = vec![None; i];
                profile[i - 1] = Some(2);
                SamplingStrategy::Nullspace { rank_profile: profile }
            }
            _ => SamplingStrategy::Nullspace { rank_profile: vec![] },
        };
        let seed = sampling::derive_seed(3, "higgs-props", j);
        (i, random_commuting_higgs(&ranks, m_t, seed, &strategy).unwrap())
    })
}

#[test]
fn randomized_fields_satisfy_both_statements() {
    let mut triggered = 0;
    for (i, h) in sampled_fields() {
        assert!(check_commutation(&h).holds);
        let v = rank_one_lemma_check(&h, i).unwrap();
        assert!(v.holds(), "{v:?}");
        assert!(mirror_lemma_check(&h, i).unwrap().holds());
        if pointwise_rank(&h, i - 1).unwrap() >= 2 {
            triggered += 1;
            assert!(h.vanishes(i));
        }
    }
    assert!(triggered > 100);
}

#[test]
fn splits_have_invariant_halves() {
    for (_, h) in sampled_fields().take(300) {
        if let Some(s) = splitting_detector(&h) {
            assert!(h.vanishes(s.index));
            assert!(s.invariant);
        }
    }
}
