"""
Script principal para correr el experimento de la torre K ⊂ K' ⊂ L
Lee la configuracion de .env (VALLAB_*) y escribe el reporte JSON
"""
import os
import sys

# Añadir path del proyecto
sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), '..')))

from dotenv import load_dotenv

from vallab.config import resolve_run_config
from vallab.experiments.paper import PaperExperiment
from vallab.utils import dumps_report, fingerprint

# Cargar variables de entorno
load_dotenv()


def main() -> int:
    """
    Función principal
    """
    config = resolve_run_config()
    print(f"vallab paper experiment: p={config.p} q={config.q} seed={config.seed}", file=sys.stderr)
    print("=" * 60, file=sys.stderr)

    report = PaperExperiment(config).run()
    document = report.to_document()
    rendered = dumps_report(document)

    if config.output:
        with open(config.output, "w", encoding="utf-8") as handle:
            handle.write(rendered + "\n")
    else:
        print(rendered)

    print(f"\nInconclusive entries: {len(report.inconclusive)}", file=sys.stderr)
    print(f"Invariants ok: {report.invariants_ok}", file=sys.stderr)
    print(f"Fingerprint: {fingerprint(document)}", file=sys.stderr)
    return 0 if report.invariants_ok else 1


if __name__ == '__main__':
    sys.exit(main())
