use wicks_core::geometry::{circumradius_residual_exponent, extremal_geometry, gauss_bonnet_check, GeometryError};

/// `(genus, β, R, C)` to 40 places, from an independent 100-digit evaluation.
const ORACLE: [(usize, &str, &str, &str); 3] = [
    (
        2,
        "0.1745329251994329576923690768488612713443",
        "1.7191071206150515459485197798727908079440",
        "1.8550771353190873312233689640838569287202",
    ),
    (
        5,
        "0.0581776417331443192307896922829537571148",
        "2.8414202346852771929326638719070245493797",
        "2.9844121102020697233084648391994457853941",
    ),
    (
        10,
        "0.0275578302946473091093214331866623060017",
        "3.5908350301671900055600065308637000356090",
        "3.7344860574963336563547865332407262447388",
    ),
];

#[test]
fn radii_match_oracle() {
    for (g, beta, r, c) in ORACLE {
        let geo = extremal_geometry(g, 40).unwrap();
        assert_eq!(geo.beta, beta, "beta at genus {g}");
        assert_eq!(geo.embedded_radius, r, "R at genus {g}");
        assert_eq!(geo.covering_radius, c, "C at genus {g}");
        assert_eq!(geo.n_sides, 12 * g - 6);
        assert_eq!(geo.error_bound, "1e-40");
        assert!(geo.embedded_below_covering);
    }
}

#[test]
fn identities_at_thirty_digits() {
    for g in [2, 5, 10] {
        let exponent = circumradius_residual_exponent(g, 30).unwrap();
        assert!(exponent.is_none_or(|e| e < -20), "residual exponent {exponent:?} at genus {g}");
        assert!(gauss_bonnet_check(g).unwrap());
    }
}

#[test]
fn radii_increase_with_genus() {
    let values: Vec<(f64, f64)> = (2..=100)
        .map(|g| {
            let geo = extremal_geometry(g, 20).unwrap();
            assert!(geo.embedded_below_covering);
            (geo.embedded_radius.parse().unwrap(), geo.covering_radius.parse().unwrap())
        })
        .collect();
    for pair in values.windows(2) {
        assert!(pair[0].0 < pair[1].0 && pair[0].1 < pair[1].1);
    }
}

#[test]
fn genus_one_is_rejected() {
    assert_eq!(extremal_geometry(1, 30), Err(GeometryError::NotHyperbolic(1)));
    assert!(circumradius_residual_exponent(0, 30).is_err());
}
