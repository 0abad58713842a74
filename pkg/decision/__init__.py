from .radical import (
    RadicalVerdict,
    RadicalWitness,
    WitnessNotFoundError,
    image_is_radical_closed,
    is_aperiodic_automaton,
    is_radical_closed,
    radical_member,
    radical_witness_search,
)
