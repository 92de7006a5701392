//! Shared harness state for the fuzz targets.

use orbiteq::doc::{parse_document, Document, Registry};
use std::sync::OnceLock;

/// A registry preloaded with the standard spaces, maps and actions, so
/// document targets exercise resolution against real cross-references.
pub fn test_registry() -> &'static Registry {
    static REG: OnceLock<Registry> = OnceLock::new();
    REG.get_or_init(|| {
        let docs = [
            r#"{"schema":"sft/v1","payload":{"name":"F2","alphabet":["0","1"]}}"#,
            r#"{"schema":"sft/v1","payload":{"name":"GM","alphabet":["0","1"],"forbidden":["11"]}}"#,
            r#"{"schema":"map/v1","payload":{"name":"sigma_f2","domain":"F2","codomain":"F2",
                 "kind":"sliding_block","window":2,"rule":{"00":"0","01":"1","10":"0","11":"1"}}}"#,
            r#"{"schema":"map/v1","payload":{"name":"sigma_gm","domain":"GM","codomain":"GM",
                 "kind":"sliding_block","window":2,"rule":{"00":"0","01":"1","10":"0"}}}"#,
            r#"{"schema":"map/v1","payload":{"name":"id_f2","domain":"F2","codomain":"F2",
                 "kind":"sliding_block","window":1,"rule":{"0":"0","1":"1"}}}"#,
            r#"{"schema":"action/v1","payload":{"name":"shift-F2","space":"F2","rank":1,
                 "generators":["sigma_f2"]}}"#,
            r#"{"schema":"action/v1","payload":{"name":"shift-GM","space":"GM","rank":1,
                 "generators":["sigma_gm"]}}"#,
        ];
        let mut reg = Registry::new();
        reg.add_all(
            docs.iter()
                .map(|d| parse_document(d).expect("seed document parses"))
                .collect(),
        )
        .expect("seed documents resolve");
        reg
    })
}

/// Parse bytes as a document of the expected schema; `None` when the input
/// is not even a well-formed envelope of that kind.
pub fn parse_as(data: &[u8], want: fn(&Document) -> bool) -> Option<Document> {
    let text = std::str::from_utf8(data).ok()?;
    let doc = parse_document(text).ok()?;
    want(&doc).then_some(doc)
}
