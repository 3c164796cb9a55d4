//! Cross-checks against inverses found by a plain brute force over u8 arrays,
//! sharing no code with the library.

use epkit::gen_inverse::{self, InverseKind};
use epkit::*;

type M = [[u8; 2]; 2];

fn mul(a: &M, b: &M, p: u8) -> M {
    let mut c = [[0u8; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = ((a[i][0] as u32 * b[0][j] as u32 + a[i][1] as u32 * b[1][j] as u32) % p as u32) as u8;
        }
    }
    c
}

fn t(a: &M) -> M {
    [[a[0][0], a[1][0]], [a[0][1], a[1][1]]]
}

fn all(p: u8) -> Vec<M> {
    let mut out = Vec::new();
    for n in 0..(p as u32).pow(4) {
        let d = |k: u32| ((n / (p as u32).pow(k)) % p as u32) as u8;
        out.push([[d(0), d(1)], [d(2), d(3)]]);
    }
    out
}

fn solutions(a: &M, p: u8, kind: InverseKind) -> Vec<M> {
    all(p)
        .into_iter()
        .filter(|x| {
            let ax = mul(a, x, p);
            let xa = mul(x, a, p);
            let inner = mul(&ax, a, p) == *a && mul(&xa, x, p) == *x;
            match kind {
                InverseKind::MoorePenrose => inner && t(&ax) == ax && t(&xa) == xa,
                InverseKind::Group => inner && ax == xa,
                InverseKind::Core => inner && t(&ax) == ax && mul(&xa, a, p) == *a && mul(&ax, x, p) == *x,
                _ => unreachable!(),
            }
        })
        .collect()
}

fn to_lib(ring: &Ring<ModularMatrices>, a: &M) -> Matrix<u64> {
    let v = [[a[0][0] as i64, a[0][1] as i64], [a[1][0] as i64, a[1][1] as i64]];
    ring.from_scalar_rows(&[&v[0], &v[1]]).unwrap()
}

fn check_field(p: u8) {
    let ring = Ring::new(MatrixRing::new(2, Modular::new(p as u64).unwrap(), Involution::Transpose).unwrap());
    let mut ep_count = 0;
    for a in all(p) {
        let la = to_lib(&ring, &a);
        let mut found = Vec::new();
        for kind in [InverseKind::MoorePenrose, InverseKind::Group, InverseKind::Core] {
            let brute = solutions(&a, p, kind);
            assert!(brute.len() <= 1, "{a:?} has {} {kind} inverses", brute.len());
            let lib = gen_inverse::compute(&ring, &la, kind).unwrap().value;
            assert_eq!(lib, brute.first().map(|x| to_lib(&ring, x)), "{kind} of {a:?} over GF({p})");
            found.push(brute.first().copied());
        }
        let ep = found[0].is_some() && found[0] == found[1];
        if ep {
            ep_count += 1;
        }
        assert_eq!(epkit::ep_oracle::ep_baseline(&ring, &la).unwrap(), ep, "{a:?}");
    }
    let expected = match p {
        2 => 9,
        3 => 57,
        _ => unreachable!(),
    };
    assert_eq!(ep_count, expected);
}

#[test]
fn inverses_over_gf2_match_brute_force() {
    check_field(2);
}

#[test]
fn inverses_over_gf3_match_brute_force() {
    check_field(3);
}

#[test]
fn zmod_inverses_match_brute_force() {
    for n in [6u64, 8, 12, 30] {
        let ring = Ring::new(ModularIntegers::new(n).unwrap());
        for a in 0..n {
            let sols: Vec<u64> = (0..n).filter(|x| a * x % n * a % n == a && x * a % n * x % n == *x).collect();
            assert!(sols.len() <= 1, "{a} in Z/{n}");
            let expected = sols.first().copied();
            for kind in [InverseKind::MoorePenrose, InverseKind::Group, InverseKind::Core, InverseKind::DualCore] {
                assert_eq!(gen_inverse::compute(&ring, &a, kind).unwrap().value, expected, "{kind} of {a} in Z/{n}");
            }
        }
    }
}
