use num_bigint::BigInt;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use thomschur::alphabet::{b_alphabet, Alphabet, Letter, VirtualAlphabet};
use thomschur::poly::{MPoly, RatMatrix, Rational, Var};
use thomschur::schur::{
    f_function, factorization_partition, resultant, schur_factorized, schur_partition, HookSpec,
    Partition, SchurEvaluator,
};

const POOL: [(char, u32); 5] = [('x', 1), ('x', 2), ('a', 1), ('a', 2), ('b', 1)];

fn letter() -> impl Strategy<Value = Letter> {
    (
        -2i64..=2,
        proptest::collection::vec((0usize..POOL.len(), -2i64..=2), 0..=2),
    )
        .prop_map(|(c, terms)| {
            Letter::linear(
                c,
                terms
                    .into_iter()
                    .map(|(k, a)| (Var::new(POOL[k].0, POOL[k].1), a)),
            )
        })
}

fn alphabet(max: usize) -> impl Strategy<Value = Alphabet> {
    proptest::collection::vec(letter(), 0..=max).prop_map(Alphabet::from_letters)
}

fn partition(max_weight: u32) -> impl Strategy<Value = Partition> {
    (0..=max_weight).prop_flat_map(|w| {
        let all = Partition::of_weight(w, w as usize);
        proptest::sample::select(all)
    })
}

fn vars(family: char, n: usize) -> Alphabet {
    Alphabet::variables(family, n)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn cancellation(a in alphabet(3), b in alphabet(3), c in alphabet(3), i in partition(6)) {
        let plain = VirtualAlphabet::new(a.clone(), b.clone());
        let padded = VirtualAlphabet::new(a.sum(&c), b.sum(&c));
        prop_assert_eq!(schur_partition(&i, &padded), schur_partition(&i, &plain));
    }

    #[test]
    fn duality(a in alphabet(3), b in alphabet(3), i in partition(6)) {
        let j = i.conjugate();
        let lhs = schur_partition(&i, &VirtualAlphabet::new(a.clone(), b.clone()));
        let swapped = schur_partition(&j, &VirtualAlphabet::new(b.clone(), a.clone()));
        let starred = schur_partition(&j, &VirtualAlphabet::new(b.star(), a.star()));
        let signed = if i.weight() % 2 == 0 { swapped } else { -swapped };
        prop_assert_eq!(&lhs, &signed);
        prop_assert_eq!(&lhs, &starred);
    }

    #[test]
    fn factorization(
        m in 0usize..=2,
        n in 0u32..=2,
        seed in any::<u64>(),
    ) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = Alphabet::from_letters((0..m).map(|k| {
            Letter::linear(rng.random_range(-2..=2), [(Var::xi(k as u32 + 1), rng.random_range(1..=2))])
        }));
        let b = Alphabet::from_letters((0..n).map(|k| {
            Letter::linear(rng.random_range(-2..=2), [(Var::b(k + 1), 1)])
        }));
        let within_i = Partition::within_rectangle(m, 2);
        let i = within_i[rng.random_range(0..within_i.len())].clone();
        let within_j = Partition::within_rectangle(2, n);
        let j = within_j[rng.random_range(0..within_j.len())].clone();
        let full = factorization_partition(&j, &i, m, n).unwrap();
        prop_assert_eq!(
            schur_factorized(&j, &i, &a, &b).unwrap(),
            schur_partition(&full, &VirtualAlphabet::new(a, b))
        );
    }

    #[test]
    fn symmetry(a in alphabet(3), b in alphabet(3), i in partition(5), seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut la = a.letters().to_vec();
        let mut lb = b.letters().to_vec();
        la.shuffle(&mut rng);
        lb.shuffle(&mut rng);
        prop_assert_eq!(
            schur_partition(&i, &VirtualAlphabet::new(a, b)),
            schur_partition(
                &i,
                &VirtualAlphabet::new(Alphabet::from_letters(la), Alphabet::from_letters(lb))
            )
        );
    }

    #[test]
    fn alphabet_algebra(a in alphabet(4), b in alphabet(4), k in -3i64..=3) {
        prop_assert_eq!(a.sum(&b).len(), a.len() + b.len());
        let v = Letter::var(Var::x());
        let ints = Alphabet::from_letters(a.letters().iter().map(|l| Letter::constant(l.constant_term())));
        let intb = Alphabet::from_letters(b.letters().iter().map(|l| Letter::constant(l.constant_term())));
        prop_assert_eq!(
            ints.sum(&intb).scale(&v).unwrap(),
            ints.scale(&v).unwrap().sum(&intb.scale(&v).unwrap())
        );
        let c = Letter::constant(k);
        prop_assert_eq!(a.sum(&b).scale(&c).unwrap(), a.scale(&c).unwrap().sum(&b.scale(&c).unwrap()));
    }

    #[test]
    fn lfr(m in 0usize..=3, n in 0usize..=3, boxes in proptest::collection::vec(-3i64..=4, 3)) {
        let a = Alphabet::from_letters(boxes[..m].iter().map(|&c| Letter::constant(c)));
        let x = Alphabet::var(Var::x());
        let bb = b_alphabet(n);
        let lhs = f_function(&a, n as u32, &VirtualAlphabet::new(x.clone(), bb.clone()));
        let rhs = resultant(&x.sum(&a.scale(&Letter::var(Var::x())).unwrap()), &bb);
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn vanishing_outside_hook() {
    for m in 0..=3usize {
        for n in 0..=3usize {
            let mut ev = SchurEvaluator::new(&VirtualAlphabet::new(vars('a', m), b_alphabet(n)));
            for w in 0..=8 {
                for i in Partition::of_weight(w, w as usize) {
                    if !i.in_hook(HookSpec::new(m, n as u32)) {
                        assert!(ev.schur(&i).is_zero(), "S_{i} of A{m} - B{n}");
                    }
                }
            }
        }
    }
}

#[test]
fn resultant_is_a_rectangle() {
    for m in 0..=3usize {
        for n in 0..=3usize {
            let (a, b) = (vars('a', m), b_alphabet(n));
            assert_eq!(
                resultant(&a, &b),
                schur_partition(
                    &Partition::rectangle(m, n as u32),
                    &VirtualAlphabet::new(a, b)
                ),
                "R(A{m}, B{n})"
            );
        }
    }
}

#[test]
fn hook_functions_are_independent() {
    let v = VirtualAlphabet::new(vars('a', 2), b_alphabet(2));
    let basis: Vec<Partition> = (0..=4)
        .flat_map(|w| Partition::of_weight(w, w as usize))
        .filter(|i| i.in_hook(HookSpec::new(2, 2)))
        .collect();
    let polys: Vec<MPoly> = basis.iter().map(|i| schur_partition(i, &v)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let points = 3 * basis.len();
    let rows: Vec<Vec<Rational>> = (0..points)
        .map(|_| {
            let pt: Vec<i64> = (0..4).map(|_| rng.random_range(-50..=50)).collect();
            let at = move |var: Var| {
                let k = if var.family() == 'a' { 0 } else { 2 } + var.index() as usize - 1;
                BigInt::from(pt[k])
            };
            polys
                .iter()
                .map(|p| Rational::from_integer(p.eval_at(&at)))
                .collect()
        })
        .collect();
    let m = RatMatrix::from_rows(rows, basis.len());
    assert_eq!(m.rank(), basis.len());
}

#[test]
fn structural_strategy_agrees_with_determinants() {
    let specs = [
        "x - B3 - [2x]",
        "X2 - D - B1",
        "X2 + [x1+x2] - B2",
        "A3 - B2",
        "-B3",
    ];
    for s in specs {
        let v: VirtualAlphabet = s.parse().unwrap();
        let mut det = SchurEvaluator::new(&v);
        let mut st = SchurEvaluator::structural(&v);
        for w in 0..=7 {
            for i in Partition::of_weight(w, 4) {
                assert_eq!(det.schur(&i), st.schur(&i), "S_{i} at {s}");
            }
        }
    }
}
