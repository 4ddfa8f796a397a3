from pathlib import Path

_tests_dir = Path(__file__)
while _tests_dir.name != 'tests':
    _tests_dir = _tests_dir.parent

DIR_TEST_DATA = _tests_dir / 'test_data'
FN_WEATHER_VALID = DIR_TEST_DATA / 'weather_valid.csv'
FN_WEATHER_GAP = DIR_TEST_DATA / 'weather_gap.csv'
FN_WEATHER_BAD_HEADER = DIR_TEST_DATA / 'weather_bad_header.csv'
FN_WEATHER_MALFORMED = DIR_TEST_DATA / 'weather_malformed.csv'
FN_EXPERIMENT_TINY = DIR_TEST_DATA / 'experiment_tiny.json'
FN_BUILDING_TOY = DIR_TEST_DATA / 'building_toy.json'
