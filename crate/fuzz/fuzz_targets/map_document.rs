#![no_main]

use libfuzzer_sys::fuzz_target;
use orbiteq::doc::Document;

fuzz_target!(|data: &[u8]| {
    // Sliding rules and depth tables resolved against real spaces: totality,
    // admissibility and prefix-consistency checks must reject, not panic.
    if let Some(Document::Map(d)) =
        orbiteq_fuzz::parse_as(data, |d| matches!(d, Document::Map(_)))
    {
        let mut probe = orbiteq::doc::Registry::new();
        let _ = probe.add_all(vec![
            orbiteq::doc::parse_document(
                r#"{"schema":"sft/v1","payload":{"name":"F2","alphabet":["0","1"]}}"#,
            )
            .unwrap(),
            orbiteq::doc::parse_document(
                r#"{"schema":"sft/v1","payload":{"name":"GM","alphabet":["0","1"],"forbidden":["11"]}}"#,
            )
            .unwrap(),
            Document::Map(d),
        ]);
    }
});
