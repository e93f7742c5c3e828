#!/usr/bin/env python3
"""
🔧 SYSTEM CHECK UTILITY
=======================
Environment check for the Mahavier toolkit
"""

import importlib.util
import platform
import sys
from pathlib import Path

ROOT = Path(__file__).parent.parent


def check_python_version():
    """Check Python version"""
    print("🐍 Checking Python version...")

    version = sys.version_info
    if version >= (3, 8):
        print(f"   ✅ Python {version.major}.{version.minor}.{version.micro} (OK)")
        return True
    print(f"   ❌ Python {version.major}.{version.minor}.{version.micro} (Need 3.8+)")
    return False


def check_dependencies():
    """Check required dependencies"""
    print("\n📦 Checking dependencies...")

    required_packages = {
        'python-dotenv': 'dotenv',
        'pyyaml': 'yaml',
        'numpy': 'numpy',
        'psutil': 'psutil',
    }

    missing = []
    for package, import_name in required_packages.items():
        if importlib.util.find_spec(import_name) is None:
            missing.append(package)
            print(f"   ❌ {package} (Missing)")
        else:
            print(f"   ✅ {package} (OK)")

    if missing:
        print("\n🔧 Install missing packages:")
        print(f"   pip install {' '.join(missing)}")
        return False
    return True


def check_configuration():
    """Check that the YAML config loads"""
    print("\n⚙️ Checking configuration...")

    sys.path.insert(0, str(ROOT / "src"))
    from utils.config import describe, load_config

    config = load_config()
    for line in describe(config):
        print(f"   ✅ {line}")
    if not (ROOT / ".env").exists():
        print("   ⚠️  .env not found (optional, see .env.example)")
    return True


def check_system_resources():
    """Check system resources"""
    print("\n💻 Checking system resources...")

    import psutil
    memory_gb = psutil.virtual_memory().total / (1024 ** 3)
    print(f"   ✅ RAM: {memory_gb:.1f} GB")
    print(f"   ✅ CPU: {psutil.cpu_count()} cores")
    return True


def run_smoke_test():
    """Idempotence of the mirror relation through the command layer"""
    print("\n🧪 Running smoke test...")

    sys.path.insert(0, str(ROOT / "src"))
    from ui.commands import run_command

    report, code = run_command(["idempotent", "mirror"])
    if code == 0:
        print(f"   ✅ idempotent mirror -> {report.verdict}")
        return True
    print(f"   ❌ idempotent mirror -> {report.verdict}")
    return False


def main():
    """Main system check"""
    print("🔗 MAHAVIER TOOLKIT - HEALTH CHECK")
    print("=" * 60)
    print(f"Platform: {platform.system()} {platform.release()}")
    print("=" * 60)

    checks = [
        ("Python Version", check_python_version),
        ("Dependencies", check_dependencies),
        ("Configuration", check_configuration),
        ("System Resources", check_system_resources),
        ("Smoke Test", run_smoke_test),
    ]

    passed = 0
    for name, check_func in checks:
        try:
            if check_func():
                passed += 1
        except Exception as e:
            print(f"   ❌ {name} check failed: {e}")

    print("\n" + "=" * 60)
    print("📊 SYSTEM CHECK SUMMARY")
    print("=" * 60)
    print(f"Passed: {passed}/{len(checks)} checks")

    if passed == len(checks):
        print("✅ Toolkit is ready")
        print("\n🚀 Next steps:")
        print("   1. Run: python main.py gallery")
        print("   2. Run: python scripts/run_acceptance.py")
        return 0
    print("❌ Toolkit needs attention")
    return 1


if __name__ == "__main__":
    sys.exit(main())
