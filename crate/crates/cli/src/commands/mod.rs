//! One function per command, mapping validated parameters to a report.

mod bounds;
mod design;
mod ghz;
mod michelson;
mod ramsey;

use edeco::constants::angular_frequency;

use crate::config::{Command, Params};
use crate::error::{CliError, Result};
use crate::report::Report;

pub fn execute(command: Command, params: &Params) -> Result<Report> {
    match command {
        Command::Ramsey => ramsey::run(params),
        Command::Michelson => michelson::run(params),
        Command::Ghz => ghz::run(params),
        Command::Design => design::run(params),
        Command::Bounds => bounds::run(params),
        Command::Selftest => Ok(crate::selftest::report(&crate::selftest::run_all())),
    }
}

/// Gap in rad/s from `omega0` or, failing that, `delta_e` in eV (1 eV by
/// default). Setting both is an error.
pub(crate) fn gap(params: &Params) -> Result<f64> {
    match (params.f64("omega0")?, params.f64("delta_e")?) {
        (Some(_), Some(_)) => Err(CliError::Usage("set either `omega0` or `delta_e`, not both".into())),
        (Some(w), None) => Ok(w),
        (None, e) => Ok(angular_frequency(e.unwrap_or(1.0))),
    }
}
