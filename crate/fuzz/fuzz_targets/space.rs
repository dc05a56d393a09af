#![no_main]

use libfuzzer_sys::fuzz_target;
use paraunitary::json::{decode_space, encode_space, to_line};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(space) = decode_space(s) {
        let again = decode_space(&to_line(&encode_space(&space))).unwrap();
        assert_eq!(*again, *space);
    }
});
