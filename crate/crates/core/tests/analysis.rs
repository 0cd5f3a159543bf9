mod common;

use lzrl::analysis::{
    bound_lower, bound_upper, check_distinct_phrases, check_long_phrases, check_overlap_bound,
    count_z, measure, min_log_sum, AnalysisError, Denominator, Mode,
};
use lzrl::bitcodec::CostModel;
use lzrl::generators::{gen_gray_multi, gen_steiner};
use lzrl::optimal::optimal_bits_parse;
use lzrl::parser::{greedy_parse, Parsing, Phrase, Text, Variant};

fn abababbbaba() -> Text {
    Text::new(vec![0, 1, 0, 1, 0, 1, 1, 1, 0, 1, 0]).unwrap()
}

#[test]
fn phrase_counts() {
    assert_eq!(count_z(&abababbbaba()), 4);
    assert_eq!(count_z(&Text::new(vec![5]).unwrap()), 1);
    assert_eq!(count_z(&Text::new(vec![0; 4]).unwrap()), 2);
}

#[test]
fn lemmas_hold_on_random_greedy_output() {
    for text in common::corpus(41, 1000, 400, &[2, 4, 16, 64]) {
        let g = greedy_parse(&text, Variant::Classical);
        assert_eq!(check_distinct_phrases(&text, &g), Ok(()));
        assert_eq!(check_long_phrases(&g, text.sigma()), Ok(()));
        let (opt, _) = optimal_bits_parse(&text, &CostModel::default());
        assert_eq!(check_overlap_bound(&opt, &g), Ok(()));
        let nc = greedy_parse(&text, Variant::Nonclassical);
        assert_eq!(check_distinct_phrases(&text, &nc), Ok(()));
        let (opt_nc, _) = optimal_bits_parse(&text, &CostModel::default().with_variant(Variant::Nonclassical));
        assert_eq!(check_overlap_bound(&opt_nc, &nc), Ok(()));
    }
}

#[test]
fn lemmas_hold_on_steiner_and_gray() {
    for inst in [gen_steiner(1000, Some(1)).unwrap(), gen_gray_multi(2000, 5, 25).unwrap()] {
        let g = greedy_parse(&inst.text, Variant::Classical);
        assert_eq!(check_distinct_phrases(&inst.text, &g), Ok(()));
        assert_eq!(check_long_phrases(&g, inst.text.sigma()), Ok(()));
        assert_eq!(check_overlap_bound(&inst.witness, &g), Ok(()));
    }
}

#[test]
fn negative_controls() {
    let text = Text::new(vec![0, 1, 0, 1]).unwrap();
    let dup = Parsing::new(
        Variant::Classical,
        vec![
            Phrase::literal_triple(0),
            Phrase::literal_triple(1),
            Phrase::literal_triple(0),
            Phrase::literal_triple(1),
        ],
    );
    assert!(check_distinct_phrases(&text, &dup).is_err());
    let one = Parsing::new(Variant::Classical, vec![Phrase::literal_triple(0)]);
    assert_eq!(check_distinct_phrases(&Text::new(vec![0]).unwrap(), &one), Ok(()));

    let s = abababbbaba();
    let g = greedy_parse(&s, Variant::Classical);
    assert_eq!(check_overlap_bound(&g, &g), Ok(()));
    // Not a valid parsing: one phrase spanning all four greedy phrases.
    let whole = Parsing::new(Variant::Classical, vec![Phrase::Triple { dist: 0, len: 11, last: 0 }]);
    assert_eq!(check_overlap_bound(&whole, &g).unwrap_err().overlaps, 4);

    let tiny = Parsing::new(Variant::Classical, vec![Phrase::literal_triple(3)]);
    assert_eq!(check_long_phrases(&tiny, 4), Ok(()));
    let short = Parsing::new(Variant::Classical, vec![Phrase::literal_triple(0); 400]);
    assert!(check_long_phrases(&short, 2).is_err());
}

/// Smallest `Σ log t_i` over `k` positive parts summing to exactly `t`
/// (larger sums only increase it).
fn brute_min_log(t: u64, k: u64, max_part: u64) -> f64 {
    if k == 0 {
        return if t == 0 { 0.0 } else { f64::INFINITY };
    }
    let mut best = f64::INFINITY;
    for first in 1..=max_part.min(t) {
        if t - first < k - 1 {
            break;
        }
        let rest = brute_min_log(t - first, k - 1, first);
        best = best.min((first as f64).log2() + rest);
    }
    best
}

#[test]
fn min_log_sum_is_exact() {
    for t in 1..=20 {
        for k in 1..=t {
            let got = min_log_sum(t, k).unwrap();
            assert!((got - brute_min_log(t, k, t)).abs() < 1e-9, "t={t} k={k}");
        }
    }
    assert_eq!(min_log_sum(10, 3).unwrap(), 3.0);
    assert!(matches!(min_log_sum(3, 4), Err(AnalysisError::DomainError(_))));
}

#[test]
fn bound_values() {
    let up = bound_upper(1 << 20, 2, 1024).unwrap();
    assert!((up - 20.0 / 10f64.log2()).abs() < 1e-9);
    let low = bound_lower(1 << 20, 2, 1024).unwrap();
    assert!((low - 20.0 / (10f64.log2() + 1.0)).abs() < 1e-9);
    assert_eq!(bound_upper(4, 2, 2).unwrap(), 2.0);
    assert!(bound_lower(1 << 12, 2, 12).unwrap() > 0.0);
    assert!(bound_upper(1, 2, 2).is_err());
    assert!(bound_upper(100, 4, 3).is_err());
}

#[test]
fn lower_bound_never_exceeds_upper() {
    for e in 10..=30u32 {
        let n = 1u64 << e;
        for sigma in 2..=256u64 {
            let mut z = sigma;
            while z <= n / u64::from(e) {
                let lo = bound_lower(n, sigma, z).unwrap();
                let hi = bound_upper(n, sigma, z).unwrap();
                assert!(lo <= hi && lo > 0.0, "n=2^{e} sigma={sigma} z={z}");
                z = z * 3 + 1;
            }
        }
    }
}

/// Where `z` meets `log n / log log z`, `z · log log log n / log n` stays
/// within a constant band.
#[test]
fn upper_bound_terms_cross_near_log_over_logloglog() {
    for e in [16u32, 24, 32, 48, 63] {
        let n = 1u64 << e;
        let crossing = (5..10_000u64)
            .find(|&z| bound_upper(n, 2, z).unwrap() < z as f64)
            .unwrap();
        let scale = f64::from(e) / f64::from(e).log2().log2();
        let r = crossing as f64 / scale;
        assert!((0.5..2.0).contains(&r), "n=2^{e}: crossing {crossing}, ratio {r}");
    }
}

#[test]
fn reports() {
    let model = CostModel::default();
    let one = measure(&Text::new(vec![3]).unwrap(), &model, Mode::ExactOpt, None).unwrap();
    assert_eq!(one.ratio_lb, 1.0);
    assert_eq!(one.denominator, Denominator::Optimal);

    let inst = gen_gray_multi(300, 4, 9).unwrap();
    let r = measure(&inst.text, &model, Mode::Both, Some(&inst.witness)).unwrap();
    let (opt, wit) = (r.bits_opt.unwrap(), r.bits_witness.unwrap());
    assert!(opt <= wit && opt <= r.bits_greedy);
    assert_eq!(r.ratio_lb, r.bits_greedy as f64 / opt as f64);
    assert!(r.bound_upper.unwrap() >= 0.0);

    let big = Text::new(vec![0; 20_001]).unwrap();
    assert!(matches!(
        measure(&big, &model, Mode::ExactOpt, None),
        Err(AnalysisError::InstanceTooLarge { .. })
    ));
    assert_eq!(
        measure(&inst.text, &model, Mode::Witness, None),
        Err(AnalysisError::MissingWitness)
    );
}
