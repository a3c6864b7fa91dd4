"""Exact-arithmetic toolkit for charge-discharging finite automata.

Plain DFA/DFAO machinery lives in ``automata``; the charge extension and
its reduced forms in ``discharge``; derived number sequences and their
closed forms in ``sequences``; menu-based relation verification, search,
and kernel evidence in ``regularity``; the JSON file format in
``documents``; and the command line in ``cli``.
"""

from .automata import (
    Dfa,
    Dfao,
    ValidationReport,
    base_k_word,
    build_tm_dfa,
    build_tm_dfao,
    delta_star,
    dfao_output,
    parse_word,
    to_dot,
    validate_dfa,
)
from .discharge import (
    ChargeResult,
    Ddfa,
    Ddfao,
    DischargeRuleSet,
    ReducedResult,
    build_fr_ddfao,
    build_tm_ddfa,
    charge_step,
    charge_trajectory,
    degenerate_ddfa,
    delta_c,
    equal_split_rules,
    reduced_delta_c,
    reduced_output,
    underlying,
    unit_charge,
    validate_rules,
)
from .cli import RunRecord, run_record
from .documents import (
    AutomatonDocument,
    DocumentError,
    corpus_path,
    document_for,
    parse_document,
    parse_spec_document,
    serialize_document,
    serialize_spec_document,
)
from .regularity import (
    AffineCombination,
    KernelReport,
    KRegularityCertificate,
    MissingMenuError,
    QuasiRegularitySpec,
    RelationMenu,
    RelationTerm,
    SearchResult,
    SingletonRefusal,
    SpecError,
    VerificationReport,
    certificate_as_spec,
    describe_combination,
    eval_combination,
    k_kernel,
    search_relation_menus,
    singleton_reduction,
    validate_spec,
    verify_quasi_k_regular,
)
from .sequences import (
    Sequence,
    TriangleA131271,
    a131271_triangle,
    a_recursion,
    b_file_text,
    builtin_sequence,
    d_shape_closed_form,
    e_relation_check,
    e_sequence,
    final_charge_sequence,
    modified_b_sequence,
    numerator_sequence,
    read_b_file,
    reduced_value_sequence,
    t_sequence,
    thue_morse,
    write_b_file,
)

__version__ = "0.1.0"
