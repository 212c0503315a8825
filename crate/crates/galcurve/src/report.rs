//! Shared report plumbing: schema versioning, JSON and CSV emission.

use serde::Serialize;

use crate::error::Result;

/// Version stamp carried by every JSON report this crate emits.
pub const SCHEMA_VERSION: u32 = 1;

/// Pretty JSON with stable field order (struct order / BTreeMap order).
pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value).map_err(|e| crate::error::Error::Domain(e.to_string()))
}

/// One CSV line; fields containing commas or quotes are quoted.
pub fn csv_row(fields: &[String]) -> String {
    fields
        .iter()
        .map(|f| {
            if f.contains(',') || f.contains('"') || f.contains('\n') {
                format!("\"{}\"", f.replace('"', "\"\""))
            } else {
                f.clone()
            }
        })
        .collect::<Vec<_>>()
        .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn test_csv_quoting() {
        assert_eq!(csv_row(&["a".into(), "b,c".into()]), "a,\"b,c\"");
    }
}
