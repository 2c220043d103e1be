import { defineConfig } from "vitest/config";

export default defineConfig({
  test: {
    environment: "jsdom",
    // the e2e suite boots a real game server, which needs a moment
    testTimeout: 60000,
    hookTimeout: 60000,
  },
});
