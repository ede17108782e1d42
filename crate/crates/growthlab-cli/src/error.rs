//! Exit-code mapping.  Distinct codes distinguish configuration problems,
//! budget exhaustion, verification failures, and unproven certificates.

use growthlab::Error;

#[derive(Debug)]
pub enum CliError {
    Config(String),
    Budget(String),
    Verification(String),
    UnknownCertificate(String),
    Internal(String),
}

pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;
pub const EXIT_VERIFICATION: i32 = 4;
pub const EXIT_UNKNOWN_CERT: i32 = 5;

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Budget(_) => EXIT_BUDGET,
            CliError::Verification(_) => EXIT_VERIFICATION,
            CliError::UnknownCertificate(_) => EXIT_UNKNOWN_CERT,
            CliError::Internal(_) => EXIT_INTERNAL,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Config(m)
            | CliError::Budget(m)
            | CliError::Verification(m)
            | CliError::UnknownCertificate(m)
            | CliError::Internal(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        let msg = err.to_string();
        match err {
            Error::BudgetExceeded { .. } => CliError::Budget(msg),
            Error::VerificationFailed(_) | Error::CriterionFailed { .. } => {
                CliError::Verification(msg)
            }
            Error::CertificateNotProven => CliError::UnknownCertificate(msg),
            Error::Overflow => CliError::Internal(msg),
            Error::SpecMismatch
            | Error::InvalidSpec(_)
            | Error::InvalidElement(_)
            | Error::EmptySet
            | Error::NotSymmetric
            | Error::MissingIdentity
            | Error::Precondition(_) => CliError::Config(msg),
        }
    }
}
