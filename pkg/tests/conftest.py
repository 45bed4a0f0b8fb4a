from hypothesis import settings

# deterministic property-test runs, no example database churn
settings.register_profile("deterministic", derandomize=True, deadline=None)
settings.load_profile("deterministic")
