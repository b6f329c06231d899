import { ReviewApi } from "./api.js";
import { ReviewSession } from "./controller.js";
import { bindKeyboard, render, ViewCallbacks } from "./view.js";
import type { Status } from "./types.js";

const reviewer =
  window.localStorage.getItem("reviewer") ||
  window.prompt("Reviewer id:", "linguist") ||
  "linguist";
window.localStorage.setItem("reviewer", reviewer);

const session = new ReviewSession(new ReviewApi(""), reviewer);
const root = document.getElementById("app");
if (!root) throw new Error("missing #app mount point");

const callbacks: ViewCallbacks = {
  onTokenClick: (i) => session.selectToken(i),
  onConfirm: () => void session.confirm().then(() => session.next()),
  onSave: () => void session.saveCorrection(),
  onNext: () => session.next(),
  onPrev: () => session.prev(),
  onFilter: (value) =>
    void session.load(value ? (value as Status) : null),
  onRetry: () => void session.load(session.getState().filter),
  onDismiss: () => session.dismissNotice(),
};

session.onChange((state) => render(root, state, callbacks));
bindKeyboard(callbacks);
void session.load();
