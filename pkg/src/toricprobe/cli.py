"""
The toricprobe command line.

    toricprobe betti arrangement.json
    toricprobe presentation arrangement.json --j-convention max --degree 2 --format table
    toricprobe validate --random 25 --seed 7

Results go to stdout, logs to stderr.  Exit codes: 0 success, 1 usage or input error, 2 failed validation.
"""
import argparse
import sys
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional

from toricprobe.addcoh import (characteristic_polynomial, cohomology_groups, e2_page, format_polynomial)
from toricprobe.arimat import circuit_report, circuits, ground_set_of_poset, nbc_sets
from toricprobe.arrangement import LayerPoset, build_layer_poset, positive_system
from toricprobe.config import (J_CONVENTIONS, OUTPUT_FORMATS, RANDOM_KINDS, VARIANTS, ProbeConfig, get_config,
                               load_config, set_config)
from toricprobe.exceptions import ConfigError, ToricProbeError, UnknownCommand, UsageError
from toricprobe.logs import get_logger, reset_logger
from toricprobe.ospres import (GradedQuotient, build_presentation, integral_conjecture_check,
                               nbc_basis_and_dimensions)
from toricprobe.serialize import ArrangementFile, error_document, parse_input, render
from toricprobe.topo import mobius_row
from toricprobe.validate import RandomCaps, validate_suite

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VALIDATION = 2


@dataclass(frozen=True)
class CommandOutput:
    data: dict
    text: str
    exit_code: int = EXIT_OK


class _ProbeArgumentParser(argparse.ArgumentParser):
    """
    argparse exits on its own with status 2, which we keep for failed validations.
    """

    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    parser = _ProbeArgumentParser(prog='toricprobe',
                                  description="Cohomology of complements of arrangements of subtori.")
    parser.add_argument('command', help=f"one of: {', '.join(COMMANDS)}")
    parser.add_argument('file', nargs='?', help="the arrangement, a JSON file")
    parser.add_argument('--format', choices=OUTPUT_FORMATS, help="output format (default from config: json)")
    parser.add_argument('--j-convention', choices=J_CONVENTIONS, dest='j_convention',
                        help="which atom the circuit relations pivot on")
    parser.add_argument('--variant', choices=VARIANTS, help="full relations, or their leading parts only")
    parser.add_argument('--degree', type=int, help="highest degree of the presentation to compute")
    parser.add_argument('--random', type=int, help="number of random arrangements to validate")
    parser.add_argument('--seed', type=int, help="seed of the random arrangements")
    parser.add_argument('--max-rank', type=int, dest='max_rank')
    parser.add_argument('--max-atoms', type=int, dest='max_atoms')
    parser.add_argument('--max-entry', type=int, dest='max_entry')
    parser.add_argument('--kind', choices=RANDOM_KINDS, help="random atoms: hypertori only, or any codimension")
    parser.add_argument('--config', help="path of a TOML configuration file")
    parser.add_argument('--verbose', action='store_true', help="log at debug level on stderr")
    return parser


def _load(file: Optional[str], command: str) -> ArrangementFile:
    if file is None:
        raise UsageError(f"the {command} command needs an arrangement file")
    return parse_input(file)


def _poset_of(arrangement: ArrangementFile) -> LayerPoset:
    return build_layer_poset(arrangement.ambient_rank, arrangement.atoms)


def _header(arrangement: ArrangementFile) -> dict:
    return {'name': arrangement.name, 'ambient_rank': arrangement.ambient_rank,
            'atom_count': len(arrangement.atoms)}


def poset_command(flags: argparse.Namespace, config: ProbeConfig) -> CommandOutput:
    arrangement = _load(flags.file, 'poset')
    poset = _poset_of(arrangement)
    mobius = mobius_row(poset, 0)
    layers = [{'index': w, **lay.to_dict(), 'atoms': sorted(poset.atoms_below[w]), 'mobius': mobius[w]}
              for w, lay in enumerate(poset.layers)]
    chi = characteristic_polynomial(poset)
    data = {**_header(arrangement), 'layer_count': len(poset), 'cover_count': len(poset.covers),
            'characteristic_polynomial': list(chi), 'characteristic_text': format_polynomial(chi),
            'layers': layers, 'covers': [{'lower': a, 'upper': b} for a, b in poset.covers]}
    return CommandOutput(data, render(data, _format(flags, config)))


def betti_command(flags: argparse.Namespace, config: ProbeConfig) -> CommandOutput:
    arrangement = _load(flags.file, 'betti')
    poset = _poset_of(arrangement)
    table = cohomology_groups(poset)
    data = {**_header(arrangement), 'poincare_text': format_polynomial(table.poincare()), **table.to_dict()}
    return CommandOutput(data, render(data, _format(flags, config)))


def e2_command(flags: argparse.Namespace, config: ProbeConfig) -> CommandOutput:
    arrangement = _load(flags.file, 'e2')
    e2 = e2_page(_poset_of(arrangement))
    data = {**_header(arrangement), **e2.to_dict()}
    return CommandOutput(data, render(data, _format(flags, config)))


def matroid_command(flags: argparse.Namespace, config: ProbeConfig) -> CommandOutput:
    arrangement = _load(flags.file, 'matroid')
    poset = _poset_of(arrangement)
    ground = ground_set_of_poset(poset)
    layers = []
    for w in range(len(poset)):
        through = sorted(poset.atoms_below[w])
        layers.append({'layer': w, 'codim': poset.codim(w), 'atoms': through,
                       'circuits': [list(c.support) for c in circuits(ground, through)],
                       'nbc_sets': [list(c.atoms) for c in nbc_sets(ground, poset, w)]})
    data = {**_header(arrangement), **ground.to_dict(),
            'circuits': [circuit_report(ground, c).to_dict() for c in circuits(ground)],
            'layers': layers}
    return CommandOutput(data, render(data, _format(flags, config)))


def presentation_command(flags: argparse.Namespace, config: ProbeConfig) -> CommandOutput:
    arrangement = _load(flags.file, 'presentation')
    poset = _poset_of(arrangement)
    d = poset.ambient_rank
    cap = flags.degree if flags.degree is not None else config.degree_cap
    cap = 2 * d if cap is None else cap
    if cap < 0:
        raise UsageError(f"--degree must be non negative, got {cap}")
    pres = build_presentation(poset, flags.j_convention or config.j_convention, flags.variant or config.variant)
    quotient = GradedQuotient(pres, cap)
    basis, nbc_dims = nbc_basis_and_dimensions(quotient)
    top = min(cap, d)
    relations = [r for r in pres.relations() if r.degree() <= cap]
    data = {**_header(arrangement), **pres.to_dict(), 'degree_cap': cap,
            'dimensions': list(quotient.dimensions()), 'nbc_dimensions': list(nbc_dims[:top + 1]),
            'poincare': list(cohomology_groups(poset).poincare()),
            'frames': [quotient.frame(w).to_dict() for w in sorted({g.layer for g in pres.generators})],
            'nbc_basis': [{**b.to_dict(), 'degree': b.degree} for b in basis],
            'relations': [r.to_dict() for r in relations]}
    return CommandOutput(data, render(data, _format(flags, config)))


def positive_system_command(flags: argparse.Namespace, config: ProbeConfig) -> CommandOutput:
    arrangement = _load(flags.file, 'positive-system')
    system = positive_system(arrangement.ambient_rank, arrangement.atoms)
    data = {**_header(arrangement), **system.to_dict()}
    return CommandOutput(data, render(data, _format(flags, config)))


def validate_command(flags: argparse.Namespace, config: ProbeConfig) -> CommandOutput:
    settings = config.section('validate')

    def pick(name):
        value = getattr(flags, name)
        value = settings[name] if value is None else value
        if isinstance(value, int) and value < 0:
            raise UsageError(f"--{name.replace('_', '-')} must be non negative, got {value}")
        return value

    caps = RandomCaps(pick('max_rank'), pick('max_atoms'), pick('max_entry'), pick('kind'),
                      tuple(settings['denominators']))
    count = pick('random')
    poset, name = None, 'input'
    if flags.file is not None:
        arrangement = parse_input(flags.file)
        poset = _poset_of(arrangement)
        name = arrangement.name or str(flags.file)
    elif not count:
        raise UsageError("the validate command needs an arrangement file or --random N")
    report = validate_suite(poset, name, pick('seed'), count, caps)
    data = report.to_dict()
    return CommandOutput(data, render(data, _format(flags, config)), EXIT_OK if report.passed else EXIT_VALIDATION)


def conjecture_check_command(flags: argparse.Namespace, config: ProbeConfig) -> CommandOutput:
    arrangement = _load(flags.file, 'conjecture-check')
    poset = _poset_of(arrangement)
    pres = build_presentation(poset, flags.j_convention or config.j_convention)
    report = integral_conjecture_check(pres, cohomology_groups(poset))
    data = {**_header(arrangement), **report.to_dict()}
    return CommandOutput(data, render(data, _format(flags, config)))


def _format(flags: argparse.Namespace, config: ProbeConfig) -> str:
    return flags.format or config.output_format


COMMANDS: Dict[str, Callable[[argparse.Namespace, ProbeConfig], CommandOutput]] = {
    'poset': poset_command,
    'betti': betti_command,
    'e2': e2_command,
    'matroid': matroid_command,
    'presentation': presentation_command,
    'positive-system': positive_system_command,
    'validate': validate_command,
    'conjecture-check': conjecture_check_command,
}


def run_command(command: str, flags: argparse.Namespace, config: Optional[ProbeConfig] = None) -> CommandOutput:
    """
    :raises UnknownCommand: For a command we don't have.
    :raises ToricProbeError: For bad input, bad flags, or an arrangement the command cannot handle.
    """
    handler = COMMANDS.get(command)
    if handler is None:
        raise UnknownCommand(f"unknown command {command!r}, expected one of {', '.join(COMMANDS)}",
                             params={'command': command})
    config = config or get_config()
    logger = get_logger()
    logger.info(__name__, "Command started", {'command': command, 'file': flags.file})
    output = handler(flags, config)
    logger.info(__name__, "Command finished", {'command': command, 'exit_code': output.exit_code})
    return output


def _apply_config(flags: argparse.Namespace) -> ProbeConfig:
    if flags.config:
        set_config(load_config(flags.config))
        reset_logger()
    config = get_config()
    if flags.verbose:
        values = dict(config.values)
        values['log_levels'] = {**config.section('log_levels'), 'default_log_level': 'debug'}
        config = ProbeConfig(values, config.path)
        set_config(config)
        reset_logger()
    return config


def _log_failure(ex: ToricProbeError):
    try:
        get_logger().error(__name__, "Command failed", {**ex.params, **error_document(ex)})
    except ConfigError:
        pass


def main(argv: Optional[List[str]] = None) -> int:
    try:
        flags = build_parser().parse_args(argv)
        config = _apply_config(flags)
        output = run_command(flags.command, flags, config)
    except ToricProbeError as ex:
        sys.stderr.write(f"toricprobe: {ex.kind}: {ex}\n")
        _log_failure(ex)
        return EXIT_USAGE
    sys.stdout.write(output.text)
    return output.exit_code


if __name__ == '__main__':
    sys.exit(main())
