/* Compiled as C99: proves the public header is consumable without C++. */
#include <eplab/eplab.h>

#include <stdio.h>
#include <string.h>

int main(void) {
  if (eplab_version() == NULL || strlen(eplab_version()) == 0) {
    fprintf(stderr, "empty version string\n");
    return 1;
  }

  eplab_system sys;
  sys.e1 = 1.0;
  sys.e2 = 0.0;
  sys.g1 = -0.1;
  sys.g2 = 0.12;
  sys.omega.re = 0.055;
  sys.omega.im = 0.0;

  eplab_complex z;
  if (eplab_discriminant(&sys, &z) != EPLAB_OK) {
    fprintf(stderr, "discriminant failed: %s\n", eplab_last_error());
    return 1;
  }

  eplab_complex s;
  if (eplab_s_one(0.3, 0.5, -0.2, &s) != EPLAB_OK) {
    fprintf(stderr, "s_one failed: %s\n", eplab_last_error());
    return 1;
  }
  double sigma = eplab_cross_section(s);
  if (!(sigma >= 0.0)) {
    fprintf(stderr, "negative cross section\n");
    return 1;
  }

  eplab_scenario *sc = NULL;
  if (eplab_scenario_preset("fig1_left", &sc) != EPLAB_OK || sc == NULL) {
    fprintf(stderr, "preset failed: %s\n", eplab_last_error());
    return 1;
  }
  eplab_scenario_free(sc);
  printf("capi ok (version %s)\n", eplab_version());
  return 0;
}
