//! Writers for the three output formats.

use std::io::Write;

use serde::Serialize;

use crate::{Failure, Status};

pub fn io_failure(e: impl std::fmt::Display) -> Failure {
    Failure { status: Status::Usage, message: format!("write failed: {e}") }
}

pub fn json<T: Serialize + ?Sized>(out: &mut dyn Write, value: &T) -> Result<(), Failure> {
    serde_json::to_writer_pretty(&mut *out, value).map_err(io_failure)?;
    writeln!(out).map_err(io_failure)
}

/// CSV with an explicit header, so an empty report still names its columns.
pub fn csv_with_header<T: Serialize>(out: &mut dyn Write, header: &[&str], rows: &[T]) -> Result<(), Failure> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(header).map_err(io_failure)?;
    for r in rows {
        w.serialize(r).map_err(io_failure)?;
    }
    w.flush().map_err(io_failure)
}

pub fn text(out: &mut dyn Write, lines: &[String]) -> Result<(), Failure> {
    for l in lines {
        writeln!(out, "{l}").map_err(io_failure)?;
    }
    Ok(())
}
