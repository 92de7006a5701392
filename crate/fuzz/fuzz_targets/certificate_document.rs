#![no_main]

use libfuzzer_sys::fuzz_target;
use orbiteq::doc::{parse_document, Document};

fuzz_target!(|data: &[u8]| {
    // Certificate tables (csoe/coe/shift_coe/group_coe) against the fixed
    // registry: key parsing, rank checks, depth caps.
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Ok(doc) = parse_document(text) else { return };
    if matches!(
        doc,
        Document::Csoe(_) | Document::Coe(_) | Document::ShiftCoe(_) | Document::GroupCoe(_)
    ) {
        // Rebuild a private registry so repeated additions cannot collide.
        let base = orbiteq_fuzz::test_registry();
        let _ = base; // registry construction exercised once
        let mut reg = orbiteq::doc::Registry::new();
        let seeds = [
            r#"{"schema":"sft/v1","payload":{"name":"F2","alphabet":["0","1"]}}"#,
            r#"{"schema":"map/v1","payload":{"name":"sigma_f2","domain":"F2","codomain":"F2",
                 "kind":"sliding_block","window":2,"rule":{"00":"0","01":"1","10":"0","11":"1"}}}"#,
            r#"{"schema":"map/v1","payload":{"name":"id_f2","domain":"F2","codomain":"F2",
                 "kind":"sliding_block","window":1,"rule":{"0":"0","1":"1"}}}"#,
            r#"{"schema":"action/v1","payload":{"name":"shift-F2","space":"F2","rank":1,
                 "generators":["sigma_f2"]}}"#,
        ];
        let _ = reg.add_all(
            seeds
                .iter()
                .map(|d| parse_document(d).unwrap())
                .chain(std::iter::once(doc))
                .collect(),
        );
    }
});
