#![no_main]

use libfuzzer_sys::fuzz_target;
use troplift::format::{parse_point, point_to_json};

fuzz_target!(|data: &[u8]| {
    if let Ok(v) = parse_point(data) {
        let text = serde_json::to_vec(&point_to_json(&v)).unwrap();
        assert_eq!(parse_point(&text).expect("serialized point parses"), v);
    }
});
