#![no_main]

use libfuzzer_sys::fuzz_target;
use troplift::format::{parse_witness, witness_from_json, witness_to_json};

fuzz_target!(|data: &[u8]| {
    if let Ok(x) = parse_witness(data) {
        let again = witness_from_json(&witness_to_json(&x)).expect("serialized witness parses");
        assert_eq!(x, again);
    }
});
