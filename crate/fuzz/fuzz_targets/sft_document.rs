#![no_main]

use libfuzzer_sys::fuzz_target;
use orbiteq::doc::{Document, Registry};

fuzz_target!(|data: &[u8]| {
    // Validation (pruning, recoding, isolated-point detection) on arbitrary
    // alphabet/forbidden-word presentations.
    if let Some(doc) = orbiteq_fuzz::parse_as(data, |d| matches!(d, Document::Sft(_))) {
        let mut reg = Registry::new();
        let _ = reg.add(doc);
    }
});
