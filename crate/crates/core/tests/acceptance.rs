//! The acceptance criteria, one test each, on the six test algebras.
//!
//! The report line goes straight to stdout so it shows up whether or not the
//! harness captures output.

use std::io::Write;
use std::sync::OnceLock;

use kproj_core::verify::{CriterionReport, Session, VerifyConfig};

fn session() -> &'static Session {
    static SESSION: OnceLock<Session> = OnceLock::new();
    SESSION.get_or_init(|| Session::new(VerifyConfig::default()).expect("test algebras build"))
}

fn criterion(id: u8) {
    let report: CriterionReport = session().run(id);
    let mut out = std::io::stdout().lock();
    writeln!(out, "{report}").unwrap();
    for note in &report.notes {
        writeln!(out, "    note {note}").unwrap();
    }
    for failure in report.failures.iter().take(5) {
        writeln!(out, "    fail {failure}").unwrap();
    }
    drop(out);
    assert!(report.passed, "{report}\n{}", report.failures.join("\n"));
}

#[test]
fn master_word_fragments() {
    criterion(1);
}

#[test]
fn hom_dimension_bounds() {
    criterion(2);
}

#[test]
fn hammocks_match_oracle() {
    criterion(3);
}

#[test]
fn suspension_is_shift() {
    criterion(4);
}

#[test]
fn boundary_triangles() {
    criterion(5);
}

#[test]
fn factorization_through_hammocks() {
    criterion(6);
}

#[test]
fn ray_composites_nonzero() {
    criterion(7);
}

#[test]
fn cantor_bendixson_strata() {
    criterion(8);
}

#[test]
fn global_dimension_picks_chart() {
    criterion(9);
}

#[test]
fn homotopy_colimit() {
    criterion(10);
}

#[test]
fn prime_field_agrees() {
    criterion(11);
}
