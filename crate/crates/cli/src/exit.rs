use std::fmt;
use std::process::ExitCode;

use displace_core::Error;

/// Process exit statuses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Failure = 1,
    Infeasible = 2,
    Usage = 64,
    Parse = 65,
    ResourceCap = 69,
}

impl From<Status> for ExitCode {
    fn from(s: Status) -> Self {
        ExitCode::from(s as u8)
    }
}

/// An input file that could not be read as the expected format.
#[derive(Debug)]
pub struct ParseFailure(pub String);

impl fmt::Display for ParseFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for ParseFailure {}

/// A check subcommand found disagreement.
#[derive(Debug)]
pub struct CheckFailed(pub String);

impl fmt::Display for CheckFailed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for CheckFailed {}

pub fn status_of(err: &anyhow::Error) -> Status {
    if err.downcast_ref::<ParseFailure>().is_some() {
        return Status::Parse;
    }
    match err.downcast_ref::<Error>() {
        Some(e) => core_status(e),
        None => Status::Failure,
    }
}

fn core_status(e: &Error) -> Status {
    match e {
        Error::TooLarge(_) | Error::SumsetTooLarge { .. } => Status::ResourceCap,
        Error::IncompleteRanking { .. }
        | Error::MalformedLine { .. }
        | Error::CountMismatch { .. }
        | Error::UndeclaredAlternatives
        | Error::InvalidRule(_) => Status::Parse,
        Error::Overflow { .. } | Error::InternalRealizationFailure(_) => Status::Failure,
        _ => Status::Infeasible,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn maps_core_errors() {
        let cases = [
            (Error::TooLarge("x".into()), Status::ResourceCap),
            (Error::InvalidRule("x".into()), Status::Parse),
            (Error::IncompleteRanking { line: 1 }, Status::Parse),
            (Error::NegativeScore { value: -1 }, Status::Infeasible),
            (Error::CommitteeOutOfRange { k: 9, max: 3 }, Status::Infeasible),
            (Error::Overflow { context: "test" }, Status::Failure),
        ];
        for (err, status) in cases {
            assert_eq!(status_of(&anyhow::Error::new(err)), status);
        }
        assert_eq!(status_of(&anyhow::Error::new(ParseFailure("bad".into()))), Status::Parse);
        assert_eq!(status_of(&anyhow::anyhow!("io")), Status::Failure);
    }

}
