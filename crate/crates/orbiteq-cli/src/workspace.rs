//! File loading into the named registry.

use orbiteq::doc::{parse_document, Document, Registry};
use orbiteq::{Error, Result};
use std::path::Path;

/// Load every file into a registry, resolving references in dependency
/// order.
pub fn load(files: &[impl AsRef<Path>]) -> Result<Registry> {
    let mut docs = Vec::new();
    for f in files {
        let path = f.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| {
            Error::BadDocument(format!("cannot read '{}': {e}", path.display()))
        })?;
        docs.push(parse_document(&text).map_err(|e| {
            Error::BadDocument(format!("in '{}': {e}", path.display()))
        })?);
    }
    let mut reg = Registry::new();
    reg.add_all(docs)?;
    Ok(reg)
}

/// Parse a single file without registering it.
pub fn load_one(path: &Path) -> Result<Document> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::BadDocument(format!("cannot read '{}': {e}", path.display())))?;
    parse_document(&text)
}
