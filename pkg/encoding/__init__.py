from .codes import (
    TARGET,
    GroupEncoding,
    NotAGroupCodeError,
    decode_word,
    encode_automaton,
    encode_word,
    encode_words,
    is_group_code,
    make_aperiodic_encoding,
    make_encoding,
    parse_encoding_file,
    recognize_nielsen_codeword,
)
