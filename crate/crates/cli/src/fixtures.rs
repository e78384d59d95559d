//! Embedded fixtures with independently derived expected outputs.
//!
//! The character-theoretic data (restriction graphs, conjugation actions,
//! decomposition matrices) was computed before the build from ordinary
//! character tables constructed by direct class-function arithmetic for
//! groups of order at most 24, with Brauer characters read off the
//! regular classes and cross-checked against a computer algebra system.
//! Symbol and unipotent fixtures carry expectations recomputed by the
//! enumeration oracles in the acceptance suite.

use serde_json::json;

use crate::engine::execute;
use crate::io::{to_canonical_json, CertificateFile, Request, ResultPayload};

pub struct Fixture {
    pub name: &'static str,
    pub provenance: &'static str,
    pub request: Request,
    pub expected: ResultPayload,
}

const CHARACTER_TABLE_PROVENANCE: &str = "character tables computed by direct class-function \
arithmetic for groups of order <= 24; Brauer data from regular classes; cross-checked against \
a computer algebra system before the build";

const ENUMERATION_PROVENANCE: &str =
    "expected values recomputed by the brute-force class-count and enumeration oracles";

fn request(value: serde_json::Value) -> Request {
    serde_json::from_value(value).expect("fixture request is well-formed")
}

fn payload(value: serde_json::Value) -> ResultPayload {
    serde_json::from_value(value).expect("fixture payload is well-formed")
}

fn a4_s4_ell3() -> Fixture {
    let request = request(json!({
        "operation": "lift",
        "instance": {
            "format_version": 1,
            "instance": {
                "kind": "tower",
                "ell": 3,
                "levels": [
                    {
                        "name": "A4",
                        "irr": ["triv", "omega", "omega_bar", "chi3"],
                        "degrees": {"chi3": 3, "omega": 1, "omega_bar": 1, "triv": 1},
                        "ibr": ["triv0", "phi3"],
                        "dec": [[1, 0], [1, 0], [1, 0], [0, 1]]
                    },
                    {
                        "name": "S4",
                        "irr": ["triv", "sgn", "chi2", "chi3", "chi3_prime"],
                        "degrees": {"chi2": 2, "chi3": 3, "chi3_prime": 3, "sgn": 1, "triv": 1},
                        "ibr": ["triv0", "sgn0", "phi3", "phi3_prime"],
                        "dec": [
                            [1, 0, 0, 0],
                            [0, 1, 0, 0],
                            [1, 1, 0, 0],
                            [0, 0, 1, 0],
                            [0, 0, 0, 1]
                        ]
                    }
                ],
                "steps": [
                    {
                        "sub": "A4",
                        "sup": "S4",
                        "index": 2,
                        "rest_irr": {
                            "chi2": ["omega", "omega_bar"],
                            "chi3": ["chi3"],
                            "chi3_prime": ["chi3"],
                            "sgn": ["triv"],
                            "triv": ["triv"]
                        },
                        "rest_ibr": {
                            "phi3": ["phi3"],
                            "phi3_prime": ["phi3"],
                            "sgn0": ["triv0"],
                            "triv0": ["triv0"]
                        },
                        "row_generator": {"omega": "omega_bar", "omega_bar": "omega"},
                        "col_generator": {}
                    }
                ],
                "seed_irr": ["triv", "chi3"],
                "seed_ibr": ["triv0", "phi3"]
            }
        }
    }));
    let expected = payload(json!({
        "kind": "lift",
        "b_top": ["chi3", "chi3_prime", "sgn", "triv"],
        "c_top": ["phi3", "phi3_prime", "sgn0", "triv0"],
        "certificate": {
            "row_order": ["chi3", "chi3_prime", "sgn", "triv"],
            "col_order": ["phi3", "phi3_prime", "sgn0", "triv0"],
            "bijection": {
                "chi3": "phi3",
                "chi3_prime": "phi3_prime",
                "sgn": "sgn0",
                "triv": "triv0"
            }
        },
        "trace": [
            {"level": "A4", "b": ["chi3", "triv"], "c": ["phi3", "triv0"]},
            {
                "level": "S4",
                "b": ["chi3", "chi3_prime", "sgn", "triv"],
                "c": ["phi3", "phi3_prime", "sgn0", "triv0"]
            }
        ]
    }));
    Fixture {
        name: "a4_s4_ell3",
        provenance: CHARACTER_TABLE_PROVENANCE,
        request,
        expected,
    }
}

fn a4_s4_ell2() -> Fixture {
    let request = request(json!({
        "operation": "lift",
        "instance": {
            "format_version": 1,
            "instance": {
                "kind": "tower",
                "ell": 2,
                "levels": [
                    {
                        "name": "A4",
                        "irr": ["triv", "omega", "omega_bar", "chi3"],
                        "degrees": {"chi3": 3, "omega": 1, "omega_bar": 1, "triv": 1},
                        "ibr": ["triv0", "omega0", "omega_bar0"],
                        "dec": [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]
                    },
                    {
                        "name": "S4",
                        "irr": ["triv", "sgn", "chi2", "chi3", "chi3_prime"],
                        "degrees": {"chi2": 2, "chi3": 3, "chi3_prime": 3, "sgn": 1, "triv": 1},
                        "ibr": ["triv0", "phi2"],
                        "dec": [[1, 0], [1, 0], [0, 1], [1, 1], [1, 1]]
                    }
                ],
                "steps": [
                    {
                        "sub": "A4",
                        "sup": "S4",
                        "index": 2,
                        "rest_irr": {
                            "chi2": ["omega", "omega_bar"],
                            "chi3": ["chi3"],
                            "chi3_prime": ["chi3"],
                            "sgn": ["triv"],
                            "triv": ["triv"]
                        },
                        "rest_ibr": {
                            "phi2": ["omega0", "omega_bar0"],
                            "triv0": ["triv0"]
                        },
                        "row_generator": {"omega": "omega_bar", "omega_bar": "omega"},
                        "col_generator": {"omega0": "omega_bar0", "omega_bar0": "omega0"},
                        "ext": {"triv": "triv"}
                    }
                ],
                "seed_irr": ["triv", "omega", "omega_bar"],
                "seed_ibr": ["triv0", "omega0", "omega_bar0"]
            }
        }
    }));
    let expected = payload(json!({
        "kind": "lift",
        "b_top": ["chi2", "triv"],
        "c_top": ["phi2", "triv0"],
        "certificate": {
            "row_order": ["chi2", "triv"],
            "col_order": ["phi2", "triv0"],
            "bijection": {"chi2": "phi2", "triv": "triv0"}
        },
        "trace": [
            {
                "level": "A4",
                "b": ["omega", "omega_bar", "triv"],
                "c": ["omega0", "omega_bar0", "triv0"]
            },
            {"level": "S4", "b": ["chi2", "triv"], "c": ["phi2", "triv0"]}
        ]
    }));
    Fixture {
        name: "a4_s4_ell2",
        provenance: CHARACTER_TABLE_PROVENANCE,
        request,
        expected,
    }
}

fn c3_s3_ell3() -> Fixture {
    let request = request(json!({
        "operation": "lift",
        "instance": {
            "format_version": 1,
            "instance": {
                "kind": "tower",
                "ell": 3,
                "levels": [
                    {
                        "name": "C3",
                        "irr": ["triv", "omega", "omega_bar"],
                        "degrees": {"omega": 1, "omega_bar": 1, "triv": 1},
                        "ibr": ["triv0"],
                        "dec": [[1], [1], [1]]
                    },
                    {
                        "name": "S3",
                        "irr": ["triv", "sgn", "chi2"],
                        "degrees": {"chi2": 2, "sgn": 1, "triv": 1},
                        "ibr": ["triv0", "sgn0"],
                        "dec": [[1, 0], [0, 1], [1, 1]]
                    }
                ],
                "steps": [
                    {
                        "sub": "C3",
                        "sup": "S3",
                        "index": 2,
                        "rest_irr": {
                            "chi2": ["omega", "omega_bar"],
                            "sgn": ["triv"],
                            "triv": ["triv"]
                        },
                        "rest_ibr": {"sgn0": ["triv0"], "triv0": ["triv0"]},
                        "row_generator": {"omega": "omega_bar", "omega_bar": "omega"},
                        "col_generator": {}
                    }
                ],
                "seed_irr": ["triv"],
                "seed_ibr": ["triv0"]
            }
        }
    }));
    let expected = payload(json!({
        "kind": "lift",
        "b_top": ["sgn", "triv"],
        "c_top": ["sgn0", "triv0"],
        "certificate": {
            "row_order": ["sgn", "triv"],
            "col_order": ["sgn0", "triv0"],
            "bijection": {"sgn": "sgn0", "triv": "triv0"}
        },
        "trace": [
            {"level": "C3", "b": ["triv"], "c": ["triv0"]},
            {"level": "S3", "b": ["sgn", "triv"], "c": ["sgn0", "triv0"]}
        ]
    }));
    Fixture {
        name: "c3_s3_ell3",
        provenance: CHARACTER_TABLE_PROVENANCE,
        request,
        expected,
    }
}

/// The negative case: over the dihedral group of order 8 at ell = 2, the
/// single candidate row over the seeded linear character has entry 2, so
/// no subset admits a certificate.
fn d8_negative() -> Fixture {
    let request = request(json!({
        "operation": "find-order",
        "instance": {
            "format_version": 1,
            "instance": {
                "kind": "matrix",
                "rows": ["chi2"],
                "cols": ["triv0"],
                "entries": [[2]]
            }
        }
    }));
    let expected = payload(json!({
        "kind": "none",
        "reason": "no ordering pair makes the matrix lower unitriangular"
    }));
    Fixture {
        name: "d8_negative",
        provenance: CHARACTER_TABLE_PROVENANCE,
        request,
        expected,
    }
}

fn symbols_gl2_q3() -> Fixture {
    let request = request(json!({
        "operation": "symbols",
        "instance": {
            "format_version": 1,
            "instance": {
                "kind": "symbols",
                "op": "enumerate",
                "n": 2,
                "eps": 1,
                "q": 3,
                "p": 3
            }
        }
    }));
    let expected = payload(json!({
        "kind": "symbols",
        "symbols": [
            [{"root": "0/1", "partition": [1]}, {"root": "1/2", "partition": [1]}],
            [{"root": "0/1", "partition": [1, 1]}],
            [{"root": "0/1", "partition": [2]}],
            [{"root": "1/2", "partition": [1, 1]}],
            [{"root": "1/2", "partition": [2]}],
            [{"root": "1/4", "partition": [1]}],
            [{"root": "1/8", "partition": [1]}],
            [{"root": "5/8", "partition": [1]}]
        ]
    }));
    Fixture {
        name: "symbols_gl2_q3",
        provenance: ENUMERATION_PROVENANCE,
        request,
        expected,
    }
}

fn basic_set_gl2_q3_ell2() -> Fixture {
    let request = request(json!({
        "operation": "symbols",
        "instance": {
            "format_version": 1,
            "instance": {
                "kind": "symbols",
                "op": "basic-set",
                "n": 2,
                "eps": 1,
                "q": 3,
                "p": 3,
                "ell": 2
            }
        }
    }));
    let expected = payload(json!({
        "kind": "symbols",
        "symbols": [
            [{"root": "0/1", "partition": [1]}, {"root": "1/2", "partition": [1]}],
            [{"root": "0/1", "partition": [2]}]
        ]
    }));
    Fixture {
        name: "basic_set_gl2_q3_ell2",
        provenance: ENUMERATION_PROVENANCE,
        request,
        expected,
    }
}

fn xi_gl2_q32() -> Fixture {
    let request = request(json!({
        "operation": "symbols",
        "instance": {
            "format_version": 1,
            "instance": {
                "kind": "symbols",
                "op": "xi",
                "n": 2,
                "eps": 1,
                "q": 32,
                "p": 2,
                "e": 1
            }
        }
    }));
    let expected = payload(json!({
        "kind": "symbol-map",
        "pairs": [
            {
                "from": [{"root": "0/1", "partition": [1, 1]}],
                "to": [{"root": "0/1", "partition": [1, 1]}]
            },
            {
                "from": [{"root": "0/1", "partition": [2]}],
                "to": [{"root": "0/1", "partition": [2]}]
            },
            {
                "from": [{"root": "1/3", "partition": [1]}],
                "to": [{"root": "1/3", "partition": [1]}]
            }
        ]
    }));
    Fixture {
        name: "xi_gl2_q32",
        provenance: ENUMERATION_PROVENANCE,
        request,
        expected,
    }
}

fn unipotent_n2() -> Fixture {
    let request = request(json!({
        "operation": "symbols",
        "instance": {
            "format_version": 1,
            "instance": {
                "kind": "symbols",
                "op": "unipotent",
                "n": 2
            }
        }
    }));
    let expected = payload(json!({
        "kind": "unipotent",
        "labels": [
            {"m": [[1, 2], [2, 1]], "k": 1, "multiplicity": 2, "component": "U2"},
            {"m": [[1, 4]], "k": 0, "multiplicity": 1, "component": "U1"},
            {"m": [[2, 2]], "k": 1, "multiplicity": 2, "component": "U1"},
            {"m": [[4, 1]], "k": 1, "multiplicity": 2, "component": "U2"}
        ],
        "total": 7,
        "u1_total": 3,
        "u2_total": 4
    }));
    Fixture {
        name: "unipotent_n2",
        provenance: ENUMERATION_PROVENANCE,
        request,
        expected,
    }
}

pub fn all() -> Vec<Fixture> {
    vec![
        a4_s4_ell3(),
        a4_s4_ell2(),
        c3_s3_ell3(),
        d8_negative(),
        symbols_gl2_q3(),
        basic_set_gl2_q3_ell2(),
        xi_gl2_q32(),
        unipotent_n2(),
    ]
}

pub fn by_name(name: &str) -> Option<Fixture> {
    all().into_iter().find(|f| f.name == name)
}

/// Runs the fixture's request and compares the canonical serialization of
/// the produced certificate file with the expected one, byte for byte.
pub fn verify(fixture: &Fixture) -> Result<(), String> {
    let got = execute(&fixture.request).map_err(|e| format!("execution failed: {e}"))?;
    let expected_file = CertificateFile {
        format_version: crate::io::FORMAT_VERSION,
        request: fixture.request.clone(),
        result: fixture.expected.clone(),
    };
    let got_text = to_canonical_json(&got);
    let want_text = to_canonical_json(&expected_file);
    if got_text != want_text {
        let diff = got_text
            .lines()
            .zip(want_text.lines())
            .enumerate()
            .find(|(_, (g, w))| g != w)
            .map(|(i, (g, w))| format!("line {}: got {g:?}, want {w:?}", i + 1))
            .unwrap_or_else(|| "outputs differ in length".to_string());
        return Err(diff);
    }
    Ok(())
}
