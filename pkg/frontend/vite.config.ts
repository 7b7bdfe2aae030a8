/// <reference types="vitest" />
import { defineConfig } from "vite";

// Dev: proxy API calls to a locally running service (designdojo serve).
// Prod: `vite build` emits dist/, which the service mounts via --static-dir.
const API_ROUTES = ["/players", "/sessions", "/packs"];

export default defineConfig({
  server: {
    proxy: Object.fromEntries(
      API_ROUTES.map((route) => [route, { target: "http://127.0.0.1:8632" }]),
    ),
  },
  build: {
    outDir: "dist",
    sourcemap: true,
  },
  test: {
    environment: "jsdom",
    include: ["test/**/*.test.ts"],
  },
});
