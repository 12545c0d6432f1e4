use proptest::prelude::*;

use super::*;
use crate::ff::Prime;

fn arb_rule() -> impl Strategy<Value = RuleSpec> {
    (prop::sample::select(vec![2u64, 3, 5, 7]), 1usize..8).prop_flat_map(|(p, n)| {
        let pr = Prime::new(p).unwrap();
        let digits = prop::collection::vec(0..p as u32, n);
        (digits.clone(), digits.clone(), digits)
            .prop_map(move |(l, c, r)| RuleSpec::tridiagonal(pr, &l, &c, &r).unwrap())
    })
}

fn arb_cells(p: u32, n: usize) -> impl Strategy<Value = Configuration> {
    prop::collection::vec(0..p, n).prop_map(Configuration::from_reduced)
}

fn hybrid_binary(n: usize, seed: u64) -> Lchca {
    Lchca::from_rule(&find_hybrid_rule(Prime::new(2).unwrap(), n, false, seed).unwrap()).unwrap()
}

proptest! {
    #[test]
    fn step_is_linear(
        (rule, s, t, c) in arb_rule().prop_flat_map(|r| {
            let (p, n) = (r.p.get(), r.n);
            (Just(r), arb_cells(p, n), arb_cells(p, n), 0..p)
        })
    ) {
        let ca = Lchca::from_rule(&rule).unwrap();
        let p = rule.p;
        let sum = Configuration::from_reduced(
            s.cells().iter().zip(t.cells()).map(|(&a, &b)| p.add_digits(a, b)).collect(),
        );
        let scaled = Configuration::from_reduced(s.cells().iter().map(|&a| p.mul_digits(c, a)).collect());
        let ms = ca.step(&s).unwrap();
        let mt = ca.step(&t).unwrap();
        let expect_sum: Vec<u32> = ms.cells().iter().zip(mt.cells()).map(|(&a, &b)| p.add_digits(a, b)).collect();
        prop_assert_eq!(ca.step(&sum).unwrap().into_cells(), expect_sum);
        let expect_scaled: Vec<u32> = ms.cells().iter().map(|&a| p.mul_digits(c, a)).collect();
        prop_assert_eq!(ca.step(&scaled).unwrap().into_cells(), expect_scaled);
    }

    #[test]
    fn run_agrees_with_repeated_step((rule, s, tau) in arb_rule().prop_flat_map(|r| {
        let (p, n) = (r.p.get(), r.n);
        (Just(r), arb_cells(p, n), 0u64..60)
    })) {
        let ca = Lchca::from_rule(&rule).unwrap();
        let mut cur = s.clone();
        for _ in 0..tau {
            cur = ca.step(&cur).unwrap();
        }
        prop_assert_eq!(ca.run(&s, tau).unwrap(), cur);
    }

    #[test]
    fn run_for_order_steps_returns(n in 2usize..10, seed in 0u64..1000, idx in 1u64..512) {
        let ca = hybrid_binary(n, seed);
        let s = Configuration::from_index(ca.p(), n, 1 + (idx - 1) % ((1 << n) - 1));
        prop_assert_eq!(ca.run(&s, ca.order().unwrap()).unwrap(), s);
    }

    #[test]
    fn orbits_partition_nonzero_states(n in 2usize..9, seed in 0u64..1000) {
        let ca = hybrid_binary(n, seed);
        let cycles = enumerate_cycles(&ca).unwrap();
        let order = ca.order().unwrap();
        prop_assert!(cycles.iter().all(|c| c.length == order));
        prop_assert_eq!(cycles.iter().map(|c| c.length).sum::<u64>(), (1u64 << n) - 1);
    }

    #[test]
    fn hybrid_power_is_a_bijection(n in 2usize..11, seed in 0u64..1000, tau in 0u64..5000) {
        prop_assert!(is_bijection_at(&hybrid_binary(n, seed), tau).unwrap());
    }
}
