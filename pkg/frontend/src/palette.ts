/**
 * Fixed chart style.  Bump STYLE_VERSION whenever anything that affects
 * rendered output changes; golden tests pin the current version.
 *
 * Level colors are drawn from the Okabe-Ito colorblind-safe palette and
 * run cold (strong disbelief, 0) to warm (strong belief, 6), with neutral
 * grey for the uncertain midpoint.
 */

export const STYLE_VERSION = "1";

export const LEVEL_COLORS: readonly string[] = [
  "#0072b2", // 0 strong disbelief
  "#56b4e9", // 1 disbelief
  "#009e73", // 2 slight disbelief
  "#999999", // 3 uncertainty
  "#f0e442", // 4 slight belief
  "#e69f00", // 5 belief
  "#d55e00", // 6 strong belief
];

export const NUM_LEVELS = 7;
