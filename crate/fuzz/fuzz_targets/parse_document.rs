#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    // Envelope parsing must never panic on arbitrary bytes.
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = orbiteq::doc::parse_document(text);
    }
});
