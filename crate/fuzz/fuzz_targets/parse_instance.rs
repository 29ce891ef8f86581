#![no_main]

use libfuzzer_sys::fuzz_target;
use troplift::format::{instance_to_json, parse_instance};

fuzz_target!(|data: &[u8]| {
    if let Ok(inst) = parse_instance(data) {
        // accepted input must survive a round trip unchanged
        let text = serde_json::to_vec(&instance_to_json(&inst)).unwrap();
        let again = parse_instance(&text).expect("serialized instance parses");
        assert_eq!(inst, again);
    }
});
