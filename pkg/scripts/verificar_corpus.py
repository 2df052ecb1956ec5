"""
Script de verificación del fragmento: deriva, materializa, glosa y
analiza cada registro del corpus distribuido.
Ejecutar: python scripts/verificar_corpus.py
"""
import sys
import os

# Agregar el directorio raíz al path
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from app.config.settings import GrammarConfig
from app.infrastructure.corpus_repository import CorpusRepository
from app.services.corpus_service import get_corpus_runner
from app.services.pf_interface import emit_gloss, spell_out
from app.services.tree_renderer import render_tree
from app.services.yia_grammar import derive_clause, get_fragment


def verificar_corpus():
    """Recorre el corpus mostrando cada paso"""
    print("=" * 70)
    print("VERIFICACIÓN: Corpus de cláusulas qulk")
    print("=" * 70)

    try:
        fragment = get_fragment()
        records = CorpusRepository(GrammarConfig.CORPUS_FILE).load()
        print(f"\n✅ Fragmento: {len(fragment.lexicon)} ítems, {len(fragment.recipes)} recetas")
        print(f"✅ Corpus: {len(records)} registros")

        fallos = 0
        for record in records:
            print(f"\n--- ({record.id}) {record.clause_type} ---")
            trace = derive_clause(fragment, record.clause_type, record.fillers)
            if not trace.converged:
                print(f"   ❌ Colapsa: {trace.verdict.reason}")
                fallos += 1
                continue

            form = spell_out(trace)
            print(f"   ✓ {len(trace.steps)} pasos")
            print(f"   ✓ Superficie: {form.render()}  (fundida: {form.render(fused=True)})")
            for line in emit_gloss(form).render().splitlines():
                print(f"     {line}")
            print(f"   ✓ Árbol: {render_tree(trace)}")

            result = get_corpus_runner().run_record(record)
            if result.passed:
                print("   ✅ Todas las comprobaciones pasan")
            else:
                fallos += 1
                for problem in result.failures:
                    print(f"   ⚠️  {problem}")

        print("\n" + "=" * 70)
        if fallos:
            print(f"❌ {fallos} registros con fallos")
        else:
            print("✅ CORPUS VERIFICADO")
        print("=" * 70)
        return fallos == 0

    except Exception as e:
        print(f"\n❌ ERROR: {e}")
        import traceback
        traceback.print_exc()
        return False


if __name__ == "__main__":
    success = verificar_corpus()
    sys.exit(0 if success else 1)
