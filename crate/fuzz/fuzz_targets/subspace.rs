#![no_main]

use libfuzzer_sys::fuzz_target;
use paraunitary::json::{decode_subspace, encode_subspace, to_line};

fuzz_target!(|data: &[u8]| {
    let Ok(s) = std::str::from_utf8(data) else { return };
    if let Ok(u) = decode_subspace(s, None) {
        let again = decode_subspace(&to_line(&encode_subspace(&u)), Some(u.space())).unwrap();
        assert_eq!(again, u);
        assert_eq!(u.orthocomplement().orthocomplement(), u);
    }
});
