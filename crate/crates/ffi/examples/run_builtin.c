/* Runs a built-in scenario through the C API and prints the report status
 * and JSON. Usage: run_builtin [name] */
#include <stdio.h>

#include "koszulab.h"

int main(int argc, char **argv) {
  const char *name = argc > 1 ? argv[1] : "koszul-n2";
  KlScenario *scenario = NULL;
  KlReport *report = NULL;

  if (kl_scenario_builtin(name, &scenario) != KL_STATUS_OK) {
    fprintf(stderr, "error: %s\n", kl_last_error());
    return 3;
  }
  if (kl_run(scenario, &report) != KL_STATUS_OK) {
    fprintf(stderr, "error: %s\n", kl_last_error());
    kl_scenario_free(scenario);
    return 3;
  }
  int status = kl_report_status(report);
  char *json = kl_report_json(report);
  printf("koszulab %s status %d\n%s", kl_version(), status, json);
  kl_string_free(json);
  kl_report_free(report);
  kl_scenario_free(scenario);
  return status;
}
