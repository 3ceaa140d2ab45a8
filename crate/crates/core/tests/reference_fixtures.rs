mod common;

use common::tables::table;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;
use resdist::generators::Fixture;
use resdist::rat::{self, int, ratio, Rat};
use resdist::{linalg, spectral, verify};

/// Exact pseudoinverse rounded to 4 places, compared entrywise.
fn assert_matches_table(f: Fixture, name: &str) {
    let want = table(name);
    let res = spectral::resistance(&f.graph()).unwrap();
    let n = res.n();
    assert_eq!(want.len(), n);
    for (i, row) in want.iter().enumerate() {
        assert_eq!(row.len(), n);
        for (j, exp) in row.iter().enumerate() {
            let got = rat::round_to_places(&res.lap_pinv[(i, j)], 4);
            assert_eq!(&got, exp, "{name} ({}, {})", i + 1, j + 1);
        }
    }
}

#[test]
fn fig_d_pinv_table() {
    assert_matches_table(Fixture::FigD, "FIG_D");
    let res = spectral::resistance(&Fixture::FigD.graph()).unwrap();
    for v in res.lap_pinv.entries() {
        assert!(Integer::is_multiple_of(&BigInt::from(16), v.denom()), "{v}");
    }
    assert_eq!(res.lap_pinv[(0, 0)], ratio(13, 16));
    assert_eq!(res.lap_pinv[(7, 7)], ratio(15, 16));
    assert_eq!(res.kappa, Some(int(2)));
}

#[test]
fn fig_d1_pinv_table() {
    assert_matches_table(Fixture::FigD1, "FIG_D1");
    let res = spectral::resistance(&Fixture::FigD1.graph()).unwrap();
    assert_eq!(res.lap_pinv[(0, 0)], ratio(23, 36));
    assert_eq!(res.lap_pinv[(3, 3)], ratio(17, 36));
}

#[test]
fn cex_pinv_table() {
    assert_matches_table(Fixture::Cex, "CEX");
    let d = Fixture::Cex.graph();
    let res = spectral::resistance(&d).unwrap();
    assert!(!res.balanced_path_used);
    assert!(linalg::penrose_check(&res.lap, &res.lap_pinv).unwrap());
    assert_eq!(*res.r(3, 1), ratio(23, 20));
    assert_eq!(rat::to_decimal(res.r(3, 1), 4), "1.1500");
}

#[test]
fn r13_differs_between_fig_d_and_fig_d1() {
    let big = spectral::resistance(&Fixture::FigD.graph()).unwrap();
    let small = spectral::resistance(&Fixture::FigD1.graph()).unwrap();
    assert_eq!(*big.r(1, 3), ratio(5, 8));
    assert_eq!(*small.r(1, 3), ratio(2, 3));
    assert_eq!(rat::to_decimal(small.r(1, 3), 4), "0.6667");
    assert_ne!(big.r(1, 3), small.r(1, 3));
}

#[test]
fn digon_and_triangle() {
    let res = spectral::resistance(&Fixture::Digon.graph()).unwrap();
    assert_eq!(
        res.rmat,
        linalg::RatMatrix::from_i64_rows(&[vec![0, 1], vec![1, 0]])
    );
    let c3 = spectral::resistance(&Fixture::C3.graph()).unwrap();
    assert_eq!(c3.kappa, Some(Rat::one()));
    // L₂† of the triangle: circulant with first row (1/3, 0, -1/3).
    let want = linalg::RatMatrix::from_fn(3, 3, |i, j| match (j + 3 - i) % 3 {
        0 => ratio(1, 3),
        1 => int(0),
        _ => ratio(-1, 3),
    });
    assert_eq!(c3.lap_pinv, want);
}

#[test]
fn every_balanced_fixture_satisfies_all_suites() {
    for f in Fixture::ALL {
        let report = verify::check_all(&f.graph()).unwrap();
        match f {
            Fixture::Cex => assert!(!report.conjecture_holds),
            _ => {
                assert!(report.conjecture_holds, "{f}");
                assert!(report.identities.values().all(|s| !s.failed()), "{f}");
            }
        }
    }
}
