from typing import Optional

import click

from engelkit.cli.common import emit, finish, parse_argument
from engelkit.services.decomp import (
    attach_curve_word,
    correction_report,
    decomposition_service,
    meridian_context,
    parse_profile,
)
from engelkit.services.parser import parse_word


@click.command("decompose")
@click.option("--gamma", "gamma_text", default=None, help="Attaching-curve word over m1..mn.")
@click.option("--profile", "profile_text", default=None, help="Genus profile written as (g;g1,...,g2g).")
@click.option("--n", "n", type=int, default=None, help="Number of meridians for --gamma.")
@click.option("--compare", "compare_text", default=None, help="Only check that gamma * compare^-1 is Milnor-trivial.")
@click.pass_context
def decompose_command(
    ctx: click.Context,
    gamma_text: Optional[str],
    profile_text: Optional[str],
    n: Optional[int],
    compare_text: Optional[str],
) -> None:
    """Decompose an attaching curve into elementary Engel commutators."""
    if (gamma_text is None) == (profile_text is None):
        raise click.UsageError("give exactly one of --gamma and --profile")
    if profile_text is not None:
        gamma, n = attach_curve_word(parse_profile(profile_text))
    else:
        gamma, gens = parse_argument(gamma_text, n)
        n = gens.size

    if compare_text is not None:
        other = parse_word(compare_text, meridian_context(n))
        check = correction_report(gamma, other, n)
        emit(ctx, check, "equal in the free Milnor group" if check.equal_in_mf else "different in the free Milnor group")
        finish(ctx, check.equal_in_mf)

    certificate = decomposition_service.decompose_gamma(gamma, n)
    lines = [
        f"{term.commutator} ^ {term.exp}" if term.conjugator == "1"
        else f"({term.commutator} ^ {term.exp}) ^ ({term.conjugator})"
        for term in certificate.terms
    ]
    lines.append(f"W = {certificate.correction_word}")
    lines.append("W is trivial in the free Milnor group")
    emit(ctx, certificate, "\n".join(lines))
