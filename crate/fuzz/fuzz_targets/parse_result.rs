#![no_main]

use libfuzzer_sys::fuzz_target;
use troplift::format::parse_result;

fuzz_target!(|data: &[u8]| {
    if let Ok(r) = parse_result(data) {
        let text = serde_json::to_vec(&r).unwrap();
        assert_eq!(parse_result(&text).expect("serialized result parses"), r);
    }
});
