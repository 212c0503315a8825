//! An exhaustive survey: every canonical rational function of degree 2 or 3
//! over F_7, its automorphism count, and its value-set size against the
//! Galois-case bound. Emits the same CSV as
//! `galcurve survey --field 7^1 --mode valueset-bound --deg 2..3`.
//!
//! ```bash
//! cargo run -p galcurve --example survey_value_set_bound
//! ```

use galcurve::parse::parse_field_spec;
use galcurve::survey::{run_survey, to_csv, SurveyConfig, SurveyMode, SurveyRow};

fn main() -> galcurve::Result<()> {
    let ctx = parse_field_spec("7^1")?;
    let cfg = SurveyConfig::new(ctx, SurveyMode::ValuesetBound, 2, 3)?;
    let rows = run_survey(&cfg)?;

    let galois: Vec<&SurveyRow> = rows
        .iter()
        .filter(|r| matches!(r, SurveyRow::ValuesetBound { galois: true, .. }))
        .collect();
    let violations = rows.iter().filter(|r| r.is_violation()).count();
    println!(
        "# {} canonical rational functions, {} Galois covers, {} bound violations",
        rows.len(),
        galois.len(),
        violations
    );

    // the Galois rows, as CSV
    let galois_rows: Vec<SurveyRow> = galois.into_iter().cloned().collect();
    print!("{}", to_csv(SurveyMode::ValuesetBound, &galois_rows));
    Ok(())
}
