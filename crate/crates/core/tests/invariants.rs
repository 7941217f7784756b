//! Property tests on random arrangements.

use hmclass::arrangement::{Arrangement, ChiTarget, Hyperplane};
use hmclass::coeffs::rational::int;
use hmclass::milnor::{assemble, ConventionSet};
use hmclass::spectra::{sp_monomial, UserTables};
use hmclass::strata::{compactify, ExtensionMode};
use hmclass::Error;
use proptest::prelude::*;

fn arrangement(n: usize, rows: &[(Vec<i64>, u64)]) -> Option<Arrangement> {
    let hyperplanes = rows
        .iter()
        .map(|(c, m)| Hyperplane {
            coeffs: c.iter().map(|&x| int(x)).collect(),
            mult: *m,
        })
        .collect();
    Arrangement::build(n, hyperplanes).ok()
}

fn rows(
    n: usize,
    count: std::ops::Range<usize>,
    max_mult: u64,
) -> impl Strategy<Value = Vec<(Vec<i64>, u64)>> {
    prop::collection::vec(
        (prop::collection::vec(-3i64..=3, n + 1), 1..=max_mult),
        count,
    )
}

/// Apply an integer change of coordinates to every linear form.
fn transform(rows: &[(Vec<i64>, u64)], m: &[[i64; 3]; 3]) -> Vec<(Vec<i64>, u64)> {
    rows.iter()
        .map(|(c, k)| {
            (
                (0..3)
                    .map(|j| (0..3).map(|i| c[i] * m[i][j]).sum())
                    .collect(),
                *k,
            )
        })
        .collect()
}

fn det3(m: &[[i64; 3]; 3]) -> i64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn chi_y_is_additive(n in 2usize..=3, raw in rows(3, 1..5, 2)) {
        let raw: Vec<_> = raw.into_iter().map(|(mut c, m)| { c.truncate(n + 1); (c, m) }).collect();
        let Some(a) = arrangement(n, &raw) else { return Ok(()); };
        let total = a.chi_y(ChiTarget::X).unwrap() + a.chi_y(ChiTarget::Complement).unwrap();
        prop_assert_eq!(total, a.chi_y(ChiTarget::Projective).unwrap());
    }

    #[test]
    fn divisor_identity_and_residue_windows(raw in rows(2, 1..6, 3)) {
        let Some(a) = arrangement(2, &raw) else { return Ok(()); };
        for s in a.sigma_strata() {
            let m = compactify(&a, &s).unwrap();
            prop_assert!(m.power_identity_holds());
            for d in &m.boundary {
                for k in 1..=m.m_s {
                    let r = m.connection_residue(d, k, ExtensionMode::OpenClosed);
                    prop_assert!(r > int(0) && r <= int(1));
                    let r = m.connection_residue(d, k, ExtensionMode::ClosedOpen);
                    prop_assert!(r >= int(0) && r < int(1));
                }
            }
        }
    }

    #[test]
    fn line_arrangements_cross_path_and_degree0(raw in rows(2, 1..6, 2)) {
        let Some(a) = arrangement(2, &raw) else { return Ok(()); };
        match assemble(&a, &UserTables::default(), &ConventionSet::default()) {
            Ok(r) => {
                prop_assert!(r.cross_path_ok);
                if a.is_reduced() {
                    prop_assert!(r.degree0.equal, "{:?}", r.degree0);
                }
            }
            Err(Error::MissingSpectrum { .. }) => {}
            Err(e) => prop_assert!(false, "{}", e),
        }
    }

    #[test]
    fn plane_arrangements_cross_path(raw in rows(3, 1..5, 2)) {
        let Some(a) = arrangement(3, &raw) else { return Ok(()); };
        match assemble(&a, &UserTables::default(), &ConventionSet::default()) {
            Ok(r) => prop_assert!(r.cross_path_ok),
            Err(Error::MissingSpectrum { .. }) => {}
            Err(e) => prop_assert!(false, "{}", e),
        }
    }

    #[test]
    fn reports_depend_only_on_the_lattice(
        raw in rows(2, 2..6, 2),
        m in prop::array::uniform3(prop::array::uniform3(-2i64..=2)),
    ) {
        prop_assume!(det3(&m) != 0);
        let (Some(a), Some(b)) = (arrangement(2, &raw), arrangement(2, &transform(&raw, &m))) else {
            return Ok(());
        };
        prop_assert_eq!(a.combinatorial_type(), b.combinatorial_type());
        let conv = ConventionSet::default();
        match (assemble(&a, &UserTables::default(), &conv), assemble(&b, &UserTables::default(), &conv)) {
            (Ok(ra), Ok(rb)) => prop_assert_eq!(ra.to_json(), rb.to_json()),
            (Err(ea), Err(eb)) => prop_assert_eq!(ea.kind(), eb.kind()),
            _ => prop_assert!(false, "only one side assembled"),
        }
    }

    #[test]
    fn monomial_mass(m in prop::collection::vec(1u64..=6, 1..=4)) {
        let sp = sp_monomial(&m).unwrap();
        let r = m.len();
        let chi_f = if r == 1 { m[0] as i64 } else { 0 };
        let sign = if r % 2 == 1 { 1 } else { -1 };
        prop_assert_eq!(sp.mass(), sign * (chi_f - 1));
        prop_assert!(sp.entries().keys().all(|a| *a > int(0) && *a < int(r as i64)));
    }
}
