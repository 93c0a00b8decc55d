"""
Setup Checker
Validates the environment before long oracle or enumeration runs.
"""
import importlib
import sys

import config
from console import check_mark

REQUIRED_PACKAGES = ['dotenv', 'numpy', 'jinja2', 'diskcache', 'networkx', 'sympy']

REQUIRED_FILES = [
    'selection_graph.dot.j2',
    'requirements.txt',
]


def check_config() -> bool:
    print("\n⚙️  Checking configuration...")
    ok = config.validate_config()
    print(f"  {check_mark(ok)} Settings in range")
    print(f"  ℹ️  Oracle workers: {config.ORACLE_WORKERS}, restricted samples: {config.RESTRICTED_SAMPLES}")
    return ok


def check_dependencies() -> bool:
    print("\n📦 Checking dependencies...")
    all_found = True
    for name in REQUIRED_PACKAGES:
        try:
            importlib.import_module(name)
            found = True
        except ImportError:
            found = False
            all_found = False
        print(f"  {check_mark(found)} {name}")
    if not all_found:
        print("  ℹ️  Run: pip install -r requirements.txt")
    return all_found


def check_files() -> bool:
    print("\n📁 Checking project files...")
    all_exist = True
    for file in REQUIRED_FILES:
        exists = (config.PROJECT_ROOT / file).exists()
        print(f"  {check_mark(exists)} {file}")
        all_exist = all_exist and exists
    return all_exist


def check_cache() -> bool:
    print("\n🗄️  Checking report cache...")
    if not config.USE_CACHE:
        print("  ℹ️  Cache disabled (PERMCOVER_USE_CACHE=0)")
        return True

    from cache_manager import ReportCache
    store = ReportCache(config.CACHE_DIR)
    try:
        written = store.set('setup_check', {'ok': True})
        read_back = store.get('setup_check') is not None
        store.delete('setup_check')
    finally:
        store.close()
    ok = written and read_back
    print(f"  {check_mark(ok)} Cache writable at {config.CACHE_DIR}")
    return ok


def check_smoke() -> bool:
    """Cross-check the oracle against the closed forms at n = 3."""
    print("\n🔎 Running smoke test...")
    try:
        import counting
        import oracle
        from completeness import Mode

        report = oracle.oracle_enumerate(3, Mode.INVERSION, use_cache=False)
        ok = (report.max_size_found == counting.gamma_I(3)
              and report.witness_count == counting.count_Q_star(3))
        print(f"  {check_mark(ok)} Oracle agrees with counting at n=3")
        return ok
    except Exception as e:
        print(f"  ❌ Error: {e}")
        return False


def main() -> int:
    """Run all checks."""
    print("=" * 70)
    print("🔍 PERMCOVER - SETUP CHECKER")
    print("=" * 70)

    results = {
        'config': check_config(),
        'dependencies': check_dependencies(),
        'files': check_files(),
        'cache': check_cache(),
        'smoke': check_smoke(),
    }

    print("\n" + "=" * 70)
    print("📋 SETUP SUMMARY")
    print("=" * 70)
    print(f"\n  Configuration:  {check_mark(results['config'])}")
    print(f"  Dependencies:   {check_mark(results['dependencies'])}")
    print(f"  Project Files:  {check_mark(results['files'])}")
    print(f"  Report Cache:   {check_mark(results['cache'])}")
    print(f"  Smoke Test:     {check_mark(results['smoke'])}")
    print()

    if all(results.values()):
        print("✅ READY")
        return 0
    print("❌ NOT READY - fix the issues above")
    return 1


if __name__ == '__main__':
    sys.exit(main())
