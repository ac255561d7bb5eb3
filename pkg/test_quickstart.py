#!/usr/bin/env python3
"""
Test script to validate the Quick Start example from README.
"""

print("🧊 Testing Admissible Cubes Python Library - Quick Start")
print("=" * 60)

try:
    from admissible_cubes import (
        FPModule,
        RingDescriptor,
        be_check,
        is_admissible,
        koszul_complex,
        koszul_homology,
        is_x_sequence,
        typical_cube,
    )
    print("✅ Successfully imported admissible_cubes")
except ImportError as e:
    print(f"❌ Import failed: {e}")
    exit(1)

z = RingDescriptor.integers()
one = FPModule.free(z, 1)
failures = 0

print("\n📐 Typical cube of (2, 3)...")
try:
    result = is_admissible(typical_cube([2, 3], one))
    if result.admissible:
        print("✅ Admissible, as expected")
    else:
        print(f"❌ Not admissible: {result.witness}")
        failures += 1
except Exception as e:
    print(f"❌ Admissibility check failed: {e}")
    failures += 1

print("\n🔁 Koszul complex of (2, 2)...")
try:
    k = koszul_complex([2, 2], one)
    h1 = k.homology(1).invariant_factors
    print(f"   H_1 invariant factors: {h1}")
    if h1 == (2,):
        print("✅ H_1 = ZZ/2")
    else:
        print("❌ Unexpected H_1")
        failures += 1

    report = be_check(k)
    print(f"   criterion={report.criterion} witness={report.witness}")
    if not report.criterion and report.witness == 2:
        print("✅ Exactness criterion finds the failing boundary")
    else:
        print("❌ Unexpected exactness report")
        failures += 1
except Exception as e:
    print(f"❌ Koszul check failed: {e}")
    failures += 1

print("\n🧮 Functional API...")
try:
    assert is_x_sequence([2, 3])
    assert not is_x_sequence([2, 4])
    assert koszul_homology([2, 2]) == [["2"], ["2"], []]
    print("✅ is_x_sequence and koszul_homology agree with the README")
except AssertionError:
    print("❌ Functional API disagrees with the README")
    failures += 1

print("\n" + "=" * 60)
if failures:
    print(f"❌ {failures} quick start check(s) failed")
    exit(1)
print("🎉 Quick start example works!")
