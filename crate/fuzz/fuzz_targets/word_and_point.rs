#![no_main]

use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    // Word tokenization and point specifications over each standard space.
    let Ok(text) = std::str::from_utf8(data) else { return };
    let reg = orbiteq_fuzz::test_registry();
    for name in ["F2", "GM"] {
        let space = reg.sft(name).unwrap();
        let _ = space.parse_word(text);
        let _ = space.encode_user_word(text);
        let _ = orbiteq::doc::parse_point_spec(space, text);
    }
});
