#![no_main]

use libfuzzer_sys::fuzz_target;
use paraunitary::json::{decode_submodule, encode_submodule, to_line};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(m) = decode_submodule(s, None) {
        let again = decode_submodule(&to_line(&encode_submodule(&m)), None).unwrap();
        assert_eq!(again, m);
    }
});
