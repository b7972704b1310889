use infbin_core::coupling::{make_y, CouplingParams, CouplingPlan};
use infbin_core::enumerate::enumerate_configs;
use infbin_core::{Configuration, LazyInfiniteConfiguration, MoveWord};
use proptest::prelude::*;

/// Reference move on a ball-level picture: `labels[b]` is the bin label of
/// ball `b` counted from the right (label 0 is the rightmost bin, labels
/// decrease to the left). Straight from the verbal definition.
fn reference_move(config: &Configuration, k: u64) -> Configuration {
    let mut labels: Vec<i64> = Vec::new();
    for (depth, &count) in config.bins().iter().rev().enumerate() {
        labels.extend(std::iter::repeat_n(-(depth as i64), count as usize));
    }
    let picked = labels[k as usize - 1];
    if picked == 0 {
        // New rightmost bin; relabel everything one step left.
        for l in labels.iter_mut() {
            *l -= 1;
        }
        labels.insert(0, 0);
    } else {
        let pos = labels.iter().position(|&l| l == picked + 1).unwrap();
        labels.insert(pos, picked + 1);
    }
    labels.pop();
    let leftmost = *labels.last().unwrap();
    let bins: Vec<u64> = (leftmost..=0)
        .map(|label| labels.iter().filter(|&&l| l == label).count() as u64)
        .filter(|&c| c > 0)
        .collect();
    Configuration::new(bins).unwrap()
}

fn arb_config(max_total: u64) -> impl Strategy<Value = Configuration> {
    prop::collection::vec(1u64..6, 1..12).prop_filter_map("size", move |bins| {
        let total: u64 = bins.iter().sum();
        (total <= max_total).then(|| Configuration::new(bins).unwrap())
    })
}

fn arb_lazy() -> impl Strategy<Value = LazyInfiniteConfiguration> {
    (1u64..5, prop::collection::vec(1u64..5, 0..6))
        .prop_map(|(base, window)| LazyInfiniteConfiguration::with_window(base, window).unwrap())
}

#[test]
fn moves_match_ball_level_reference() {
    for m in 1..=9 {
        for x in enumerate_configs(m).unwrap() {
            for k in 1..=m {
                assert_eq!(x.apply_move(k).unwrap(), reference_move(&x, k), "{x} k={k}");
            }
        }
    }
}

#[test]
fn x_family_is_a_phi_k_cycle() {
    for l in 3..=20 {
        for k in 2..l {
            let p = CouplingParams::derive(k, l).unwrap();
            assert_eq!(l, k * p.d + p.r);
            assert!(p.d >= 1 && (1..=k).contains(&p.r));
            for i in 0..k {
                let xi = p.x(i).unwrap();
                assert_eq!(xi.total(), l);
                let prev = p.x((i + k - 1) % k).unwrap();
                assert_eq!(xi.apply_move(k).unwrap(), prev, "k={k} l={l} i={i}");
            }
        }
    }
}

#[test]
fn y_family_is_a_phi_l_cycle() {
    for l in 2..=20 {
        for j in 0..l {
            let next = make_y(l, (j + l - 1) % l).unwrap();
            assert_eq!(make_y(l, j).unwrap().apply_move(l).unwrap(), next, "l={l} j={j}");
        }
    }
}

#[test]
fn f_contracts_for_every_pair() {
    for l in 3..=20 {
        for k in 2..l {
            let p = CouplingParams::derive(k, l).unwrap();
            assert_eq!(p.f(0).unwrap(), 0);
            for i in 1..k {
                assert!(p.f(i).unwrap() < i);
                assert!(p.f(i).unwrap() >= p.f(i - 1).unwrap());
            }
        }
    }
}

#[test]
fn length_bound_sweep() {
    for l in 2..=20u64 {
        for k in 1..l {
            for n in 1..=1000 {
                let plan = CouplingPlan::build(k, l, n).unwrap();
                let acc = plan.accounting();
                assert_eq!(acc.actual, plan.word.len());
                assert_eq!(
                    acc.actual,
                    plan.psi1_len + (k - 1) * plan.psi_len + plan.tail_len,
                    "k={k} l={l} N={n}"
                );
                assert!(acc.within_bound(), "k={k} l={l} N={n}: {acc:?}");
                assert!(acc.actual < acc.derivation_bound);
                if let Some(printed) = acc.printed_formula {
                    assert!(printed >= acc.actual);
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn commutation_randomized(x in arb_config(40), n_seed in any::<u64>(), k_seed in any::<u64>()) {
        let m = x.total();
        let n = 1 + n_seed % m;
        let k = 1 + k_seed % n;
        let lhs = x.apply_move(k).unwrap().project(n).unwrap();
        let rhs = x.project(n).unwrap().apply_move(k).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn conservation_and_positivity(x in arb_config(40), k_seed in any::<u64>()) {
        let k = 1 + k_seed % x.total();
        let y = x.apply_move(k).unwrap();
        prop_assert_eq!(y.total(), x.total());
        prop_assert_eq!(y.bins().iter().sum::<u64>(), x.total());
        prop_assert!(y.bins().iter().all(|&b| b >= 1));
    }

    #[test]
    fn projection_idempotent(x in arb_config(40), a in any::<u64>(), b in any::<u64>()) {
        let n = 1 + a % x.total();
        let n2 = 1 + b % n;
        prop_assert_eq!(x.project(n).unwrap().project(n2).unwrap(), x.project(n2).unwrap());
    }

    #[test]
    fn lazy_and_finite_paths_agree(
        x in arb_lazy(),
        n in 1u64..15,
        moves in prop::collection::vec(any::<u64>(), 0..40),
    ) {
        let mut word = MoveWord::new();
        for m in moves {
            word.push(1 + m % n, 1);
        }
        let finite = word.apply(&x.project(n).unwrap()).unwrap();
        let lazy = word.apply_infinite(&x).project(n).unwrap();
        prop_assert_eq!(finite, lazy);
    }

    #[test]
    fn lazy_moves_add_exactly_one_ball(x in arb_lazy(), k in 1u64..30) {
        let y = x.moved(k).unwrap();
        let deep = 40;
        let created = (y.shift() - x.shift()) as usize;
        let before: u64 = (0..deep).map(|j| x.bin(j)).sum();
        // A new bin pushes every old bin one place deeper.
        let after: u64 = (0..deep + created).map(|j| y.bin(j)).sum();
        prop_assert_eq!(after, before + 1);
        prop_assert!(y.window().len() <= x.window().len().max(k as usize) + 1);
    }

    #[test]
    fn run_length_is_transparent(x in arb_config(20), k_seed in any::<u64>(), a in 1u64..4, b in 1u64..4) {
        let k = 1 + k_seed % x.total();
        let split = MoveWord::power(k, a).then(&MoveWord::power(k, b));
        let joined = MoveWord::power(k, a + b);
        prop_assert_eq!(split.apply(&x).unwrap(), joined.apply(&x).unwrap());
    }

    #[test]
    fn word_text_round_trip(moves in prop::collection::vec((1u64..9, 1u64..5), 0..10)) {
        let mut word = MoveWord::new();
        for (m, r) in moves {
            word.push(m, r);
        }
        prop_assert_eq!(word.to_string().parse::<MoveWord>().unwrap(), word);
    }

    #[test]
    fn monotone_extension(
        pair in (arb_lazy(), arb_lazy()),
        k in 2u64..5,
        extra in 1u64..5,
    ) {
        // Couple l = k + extra balls with the explicit plan, then one more phi_k
        // couples one more ball.
        let l = k + extra;
        let plan = CouplingPlan::build(k, l, l).unwrap();
        let x = plan.word.apply_infinite(&pair.0);
        let y = plan.word.apply_infinite(&pair.1);
        prop_assert!(x.projections_agree(&y, l));
        let x2 = x.moved(k).unwrap();
        let y2 = y.moved(k).unwrap();
        prop_assert!(x2.projections_agree(&y2, l + 1));
    }
}
