"""
Interfaz de línea de comandos (click).

Códigos de salida: 0 éxito, 1 fallo del corpus, 2 error de entrada.
"""
import functools
import logging
from pathlib import Path
from typing import Dict, Iterable

import click
import pandas as pd

from app.config.settings import AppConfig, GlossConfig, GrammarConfig, SearchConfig
from app.domain.lexical_item import Lexicon
from app.domain.search import SearchBounds
from app.exceptions.grammar_exceptions import GrammarError
from app.infrastructure.corpus_repository import CorpusRepository
from app.infrastructure.lexicon_repository import lookup_item
from app.services.corpus_service import CorpusRunner, get_corpus_runner
from app.services.parser_service import parse
from app.services.pf_interface import emit_gloss, spell_out
from app.services.report_exporter import get_report_exporter
from app.services.tree_renderer import STYLES, render_tree
from app.services.yia_grammar import derive_clause, get_fragment

logger = logging.getLogger(__name__)

INPUT_ERROR = 2


class InputError(click.ClickException):
    """Error de entrada del usuario: 'Error: ...' en stderr, código 2"""
    exit_code = INPUT_ERROR


def input_errors(fn):
    """Convierte los errores del analizador en InputError"""
    @functools.wraps(fn)
    def wrapper(*args, **kwargs):
        try:
            return fn(*args, **kwargs)
        except GrammarError as e:
            logger.info(f"Entrada rechazada: {e}")
            raise InputError(str(e))
    return wrapper


def _fillers(slots: Iterable[str], lexicon: Lexicon) -> Dict[str, str]:
    fillers = {}
    for pair in slots:
        name, sep, key = pair.partition("=")
        if not sep or not name or not key:
            raise InputError(f"Relleno ilegible '{pair}' (se espera nombre=id)")
        fillers[name] = lookup_item(lexicon, key).id
    return fillers


fused_option = click.option(
    "--fused-render/--hyphenated",
    default=GlossConfig.FUSED_RENDER,
    help="Escribe 'qulk' en lugar de 'qul-k'",
)
tree_option = click.option(
    "--tree", "tree_style",
    type=click.Choice(STYLES),
    default="bracketed",
    show_default=True,
    help="Estilo del árbol",
)


@click.group()
@click.version_option(AppConfig.VERSION, prog_name="qulk")
def cli():
    """Analizador de cláusulas qulk del árabe yemení de Ibb."""


# ----------------------------------------------------------------------
# derive
# ----------------------------------------------------------------------

@cli.command()
@click.argument("clause_type")
@click.option("--slot", "slots", multiple=True, metavar="NOMBRE=ID",
              help="Relleno de una ranura de la receta (repetible)")
@tree_option
@click.option("--trace", "show_trace", is_flag=True, help="Muestra los pasos de la derivación")
@click.option("--gloss", "show_gloss", is_flag=True, help="Muestra la glosa interlineal")
@fused_option
@input_errors
def derive(clause_type, slots, tree_style, show_trace, show_gloss, fused_render):
    """Deriva una cláusula qulk con la receta CLAUSE_TYPE.

    \b
    Ejemplo:
      qulk derive decl-affirm --slot subject=ʕali --slot verb=jāʔ
    """
    fragment = get_fragment()
    trace = derive_clause(fragment, clause_type, _fillers(slots, fragment.lexicon))

    if show_trace:
        click.echo(trace.to_text())
    if not trace.converged:
        raise InputError(f"La derivación colapsa: {trace.verdict.reason}")

    form = spell_out(trace)
    click.echo(form.render(fused_render))
    if show_gloss:
        click.echo(emit_gloss(form).render())
    click.echo(render_tree(trace, tree_style))


# ----------------------------------------------------------------------
# parse
# ----------------------------------------------------------------------

@cli.command("parse")
@click.argument("surface")
@click.option("--max-steps", type=click.IntRange(min=1), default=SearchConfig.MAX_STEPS, show_default=True)
@click.option("--max-null-items", type=click.IntRange(min=1), default=SearchConfig.MAX_NULL_ITEMS, show_default=True)
@click.option("--max-numerations", type=click.IntRange(min=1), default=SearchConfig.MAX_NUMERATIONS, show_default=True)
@tree_option
@fused_option
@input_errors
def parse_command(surface, max_steps, max_null_items, max_numerations, tree_style, fused_render):
    """Busca las derivaciones convergentes que producen SURFACE."""
    bounds = SearchBounds(max_steps, max_null_items, max_numerations)
    result = parse(surface, get_fragment(), bounds, fused_render=fused_render)

    click.echo(f"{len(result)} análisis para '{surface}'")
    for i, trace in enumerate(result, start=1):
        click.echo(f"# análisis {i}")
        click.echo(render_tree(trace, tree_style))
    if not result.complete:
        click.echo("Aviso: la búsqueda alcanzó algún límite; puede haber más análisis", err=True)


# ----------------------------------------------------------------------
# corpus
# ----------------------------------------------------------------------

@cli.group()
def corpus():
    """Comandos del corpus glosado."""


@corpus.command("run")
@click.argument("file", required=False,
                type=click.Path(exists=True, dir_okay=False, path_type=Path))
@click.option("--export", "export_path", type=click.Path(dir_okay=False, path_type=Path),
              help="Exporta la matriz de resultados a .xlsx")
@click.option("--no-parse", is_flag=True, help="Omite el análisis de cada superficie")
@click.pass_context
@input_errors
def corpus_run(ctx, file, export_path, no_parse):
    """Ejecuta el corpus FILE (por defecto, el distribuido)."""
    records = CorpusRepository(file or GrammarConfig.CORPUS_FILE).load()
    runner = CorpusRunner(check_parse=False) if no_parse else get_corpus_runner()
    report = runner.run_corpus(records)

    for result in report.results:
        if result.passed:
            click.echo(f"✅ ({result.record_id}) {result.rendered}")
        else:
            click.echo(f"❌ ({result.record_id}) {'; '.join(result.failures)}")
    click.echo(report.summary())

    if export_path is not None:
        click.echo(f"Informe: {get_report_exporter().export(report, export_path)}")
    ctx.exit(report.exit_code)


# ----------------------------------------------------------------------
# lexicon
# ----------------------------------------------------------------------

@cli.group()
def lexicon():
    """Consulta del léxico."""


@lexicon.command("show")
@click.argument("item_id", required=False)
@input_errors
def lexicon_show(item_id):
    """Muestra el léxico completo o la entrada ITEM_ID."""
    lex = get_fragment().lexicon
    if item_id is None:
        df = pd.DataFrame([item.to_dict() for item in lex])
        click.echo(df[["id", "gloss", "category", "morph_class", "features"]].to_string(index=False))
        return

    item = lookup_item(lex, item_id)
    for key, value in item.to_dict().items():
        click.echo(f"{key}: {value}")


# ----------------------------------------------------------------------
# gloss
# ----------------------------------------------------------------------

@cli.command()
@click.argument("surface")
@click.option("--leipzig/--verbatim", default=GlossConfig.LEIPZIG,
              help="Normaliza las abreviaturas (1.SG → 1SG)")
@fused_option
@input_errors
def gloss(surface, leipzig, fused_render):
    """Glosa interlineal de SURFACE a partir de su primer análisis."""
    result = parse(surface, get_fragment(), fused_render=fused_render)
    click.echo(emit_gloss(spell_out(result.first), leipzig=leipzig).render())


__all__ = [
    "cli",
    "InputError",
    "INPUT_ERROR",
]
