#![no_main]

use libfuzzer_sys::fuzz_target;
use paraunitary::json::{decode_normal_form, encode_normal_form, to_line};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(nf) = decode_normal_form(s, None) {
        let again = decode_normal_form(&to_line(&encode_normal_form(&nf, None)), None).unwrap();
        assert_eq!(again, nf);
    }
});
